#include "gammamod/field.hpp"

#include "gammamod/errors.hpp"

#include <sstream>

namespace gammamod {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Residue field_inv(Residue a, std::uint32_t p) {
  if (a % p == 0) throw DomainError("inverse of zero in F_p");
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<Residue>(result);
}

FieldMat::FieldMat(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {
  if (p >= (1u << 16) || !is_prime(p)) throw DomainError("field modulus must be a prime below 65536");
}

FieldMat FieldMat::identity(std::uint32_t p, std::size_t n) {
  FieldMat m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1;
  return m;
}

FieldMat FieldMat::from_rows(std::uint32_t p, const std::vector<std::vector<long long>>& rows,
                             std::size_t cols) {
  if (!rows.empty()) cols = rows[0].size();
  FieldMat m(p, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

FieldMat FieldMat::column(std::uint32_t p, const FieldVec& v) {
  FieldMat m(p, v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m.a_[i] = v[i] % p;
  return m;
}

void FieldMat::set(std::size_t r, std::size_t c, long long v) {
  long long m = v % static_cast<long long>(p_);
  if (m < 0) m += p_;
  a_[r * cols_ + c] = static_cast<Residue>(m);
}

bool FieldMat::is_zero() const {
  for (auto x : a_)
    if (x) return false;
  return true;
}

bool FieldMat::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (a_[r * cols_ + c] != (r == c ? 1u : 0u)) return false;
  return true;
}

FieldMat FieldMat::transpose() const {
  FieldMat t(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.a_[c * rows_ + r] = a_[r * cols_ + c];
  return t;
}

FieldMat FieldMat::operator*(const FieldMat& o) const {
  if (cols_ != o.rows_ || p_ != o.p_) throw DimensionError("matrix product shape mismatch");
  FieldMat r(p_, rows_, o.cols_);
  if (p_ == 2) {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        if (!a_[i * cols_ + k]) continue;
        const Residue* src = o.row_ptr(k);
        Residue* dst = r.row_ptr(i);
        for (std::size_t j = 0; j < o.cols_; ++j) dst[j] ^= src[j];
      }
    return r;
  }
  std::vector<std::uint64_t> acc(o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < cols_; ++k) {
      std::uint64_t x = a_[i * cols_ + k];
      if (!x) continue;
      const Residue* src = o.row_ptr(k);
      for (std::size_t j = 0; j < o.cols_; ++j) acc[j] = (acc[j] + x * src[j]) % p_;
    }
    for (std::size_t j = 0; j < o.cols_; ++j) r.a_[i * o.cols_ + j] = static_cast<Residue>(acc[j]);
  }
  return r;
}

FieldMat FieldMat::operator+(const FieldMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || p_ != o.p_) throw DimensionError("matrix sum shape mismatch");
  FieldMat r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = (a_[i] + o.a_[i]) % p_;
  return r;
}

FieldMat FieldMat::operator-(const FieldMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || p_ != o.p_) throw DimensionError("matrix difference shape mismatch");
  FieldMat r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = (a_[i] + p_ - o.a_[i]) % p_;
  return r;
}

FieldMat FieldMat::scaled(Residue s) const {
  FieldMat r = *this;
  for (auto& x : r.a_) x = static_cast<Residue>(static_cast<std::uint64_t>(x) * s % p_);
  return r;
}

FieldVec FieldMat::apply(const FieldVec& x) const {
  if (x.size() != cols_) throw DimensionError("matrix-vector shape mismatch");
  FieldVec y(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < cols_; ++j) s = (s + static_cast<std::uint64_t>(a_[i * cols_ + j]) * x[j]) % p_;
    y[i] = static_cast<Residue>(s);
  }
  return y;
}

FieldMat FieldMat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
  FieldMat b(p_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) b.a_[r * nc + c] = a_[(r0 + r) * cols_ + c0 + c];
  return b;
}

void FieldMat::set_block(std::size_t r0, std::size_t c0, const FieldMat& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DimensionError("block out of range");
  for (std::size_t r = 0; r < b.rows_; ++r)
    for (std::size_t c = 0; c < b.cols_; ++c) a_[(r0 + r) * cols_ + c0 + c] = b.a_[r * b.cols_ + c];
}

std::string FieldMat::key() const {
  std::string k = std::to_string(rows_) + "x" + std::to_string(cols_) + ":";
  for (auto x : a_) {
    k += std::to_string(x);
    k += ',';
  }
  return k;
}

std::string FieldMat::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ",[" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << a_[r * cols_ + c];
    os << "]";
  }
  os << "]";
  return os.str();
}

FieldMat hstack(const FieldMat& a, const FieldMat& b) {
  if (a.rows() != b.rows()) throw DimensionError("hstack row mismatch");
  FieldMat r(a.prime(), a.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(0, a.cols(), b);
  return r;
}

FieldMat vstack(const FieldMat& a, const FieldMat& b) {
  if (a.cols() != b.cols()) throw DimensionError("vstack column mismatch");
  FieldMat r(a.prime(), a.rows() + b.rows(), a.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), 0, b);
  return r;
}

FieldMat block_diag(const FieldMat& a, const FieldMat& b) {
  FieldMat r(a.prime(), a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

FieldMat kron(const FieldMat& a, const FieldMat& b) {
  const auto p = a.prime();
  FieldMat r(p, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      std::uint64_t x = a(i, j);
      if (!x) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r.set(i * b.rows() + k, j * b.cols() + l, static_cast<long long>(x * b(k, l) % p));
    }
  return r;
}

namespace {

// Reduces in place, choosing pivots only among the first `limit` columns.
std::vector<std::size_t> reduce(FieldMat& m, std::size_t limit) {
  const std::uint32_t p = m.prime();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < limit && row < rows; ++c) {
    std::size_t piv = row;
    while (piv < rows && m(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != row) {
      Residue* a = m.row_ptr(piv);
      Residue* b = m.row_ptr(row);
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[j], b[j]);
    }
    Residue* pr = m.row_ptr(row);
    if (p == 2) {
      for (std::size_t r = 0; r < rows; ++r) {
        if (r == row || m(r, c) == 0) continue;
        Residue* rr = m.row_ptr(r);
        for (std::size_t j = c; j < cols; ++j) rr[j] ^= pr[j];
      }
    } else {
      std::uint64_t inv = field_inv(pr[c], p);
      for (std::size_t j = c; j < cols; ++j) pr[j] = static_cast<Residue>(pr[j] * inv % p);
      for (std::size_t r = 0; r < rows; ++r) {
        if (r == row) continue;
        std::uint64_t f = m(r, c);
        if (!f) continue;
        Residue* rr = m.row_ptr(r);
        for (std::size_t j = c; j < cols; ++j)
          rr[j] = static_cast<Residue>((rr[j] + (p - f) * pr[j]) % p);
      }
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

RrefResult rref(const FieldMat& m) {
  RrefResult r{m, {}};
  r.pivots = reduce(r.reduced, m.cols());
  return r;
}

std::size_t rank(const FieldMat& m) {
  FieldMat c = m;
  return reduce(c, m.cols()).size();
}

FieldMat kernel_basis(const FieldMat& m) {
  auto rr = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : rr.pivots) is_pivot[c] = true;
  FieldMat k(m.prime(), n, n - rr.rank());
  std::size_t col = 0;
  const auto p = m.prime();
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    k.set(f, col, 1);
    for (std::size_t r = 0; r < rr.pivots.size(); ++r)
      k.set(rr.pivots[r], col, (p - rr.reduced(r, f)) % p);
    ++col;
  }
  return k;
}

std::optional<FieldMat> solve_matrix(const FieldMat& m, const FieldMat& b) {
  if (b.rows() != m.rows()) throw DimensionError("solve: right-hand side row mismatch");
  FieldMat aug = hstack(m, b);
  auto piv = reduce(aug, m.cols());
  for (std::size_t r = piv.size(); r < aug.rows(); ++r)
    for (std::size_t j = m.cols(); j < aug.cols(); ++j)
      if (aug(r, j)) return std::nullopt;
  FieldMat x(m.prime(), m.cols(), b.cols());
  for (std::size_t r = 0; r < piv.size(); ++r)
    for (std::size_t j = 0; j < b.cols(); ++j) x.set(piv[r], j, aug(r, m.cols() + j));
  return x;
}

std::optional<FieldVec> solve(const FieldMat& m, const FieldVec& b) {
  auto x = solve_matrix(m, FieldMat::column(m.prime(), b));
  if (!x) return std::nullopt;
  FieldVec v(m.cols());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (*x)(i, 0);
  return v;
}

FieldMat image_basis(const FieldMat& m) {
  auto rr = rref(m);
  FieldMat b(m.prime(), m.rows(), rr.rank());
  for (std::size_t k = 0; k < rr.pivots.size(); ++k)
    for (std::size_t r = 0; r < m.rows(); ++r) b.set(r, k, m(r, rr.pivots[k]));
  return b;
}

FieldMat cokernel_projection(const FieldMat& m) { return kernel_basis(m.transpose()).transpose(); }

}  // namespace gammamod
