#include "gammamod/rational.hpp"

#include "gammamod/errors.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

namespace gammamod {

namespace {

using Int = boost::multiprecision::cpp_int;

bool parse_integer(std::string_view s, Int& out) {
  if (s.empty()) return false;
  std::size_t i = 0;
  bool negative = false;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) return false;
  Int v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    v = v * 10 + (s[i] - '0');
  }
  out = negative ? Int(-v) : v;
  return true;
}

}  // namespace

Rat::Rat(long long n, long long d) {
  if (d == 0) throw ParseError("zero denominator");
  v_ = Impl(n, d);
}

Rat Rat::parse(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  auto slash = s.find('/');
  Int num, den = 1;
  if (slash == std::string_view::npos) {
    if (!parse_integer(s, num)) throw ParseError("malformed rational '" + std::string(s) + "'");
  } else {
    auto ds = s.substr(slash + 1);
    if (!parse_integer(s.substr(0, slash), num) || ds.empty() || ds[0] == '-' || ds[0] == '+' ||
        !parse_integer(ds, den))
      throw ParseError("malformed rational '" + std::string(s) + "'");
    if (den == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
  }
  return Rat(Impl(num, den));
}

std::string Rat::str() const {
  auto n = boost::multiprecision::numerator(v_);
  auto d = boost::multiprecision::denominator(v_);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

bool Rat::is_integer() const { return boost::multiprecision::denominator(v_) == 1; }

Rat Rat::floor() const {
  Int n = boost::multiprecision::numerator(v_);
  Int d = boost::multiprecision::denominator(v_);
  Int q = n / d;
  if (n < 0 && q * d != n) q -= 1;
  return Rat(Impl(q));
}

std::string Rat::numerator_str() const { return boost::multiprecision::numerator(v_).str(); }
std::string Rat::denominator_str() const { return boost::multiprecision::denominator(v_).str(); }

Rat& Rat::operator/=(const Rat& o) {
  if (o.v_.is_zero()) throw DomainError("division by zero");
  v_ /= o.v_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  Rat s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVec add(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw DimensionError("add: length mismatch");
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RatVec sub(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw DimensionError("sub: length mismatch");
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatVec scale(const Rat& s, const RatVec& a) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

RatVec neg(const RatVec& a) { return scale(Rat(-1), a); }

RatVec zeros(std::size_t n) { return RatVec(n); }

bool is_zero(const RatVec& a) {
  return std::all_of(a.begin(), a.end(), [](const Rat& r) { return r.is_zero(); });
}

RatVec mat_vec(const RatMat& m, const RatVec& x) {
  RatVec r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], x);
  return r;
}

RatMat mat_mul(const RatMat& a, const RatMat& b) {
  std::size_t inner = b.size();
  std::size_t cols = b.empty() ? 0 : b[0].size();
  RatMat r(a.size(), RatVec(cols));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) throw DimensionError("mat_mul: shape mismatch");
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < cols; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  }
  return r;
}

RatMat identity_rat(std::size_t n) {
  RatMat r(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

RatMat transpose(const RatMat& m) {
  if (m.empty()) return {};
  RatMat r(m[0].size(), RatVec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) r[j][i] = m[i][j];
  return r;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref_in_place(RatMat& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    Rat inv = Rat(1) / m[row][c];
    for (auto& e : m[row]) e *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c].is_zero()) continue;
      Rat f = m[r][c];
      for (std::size_t j = 0; j < m[r].size(); ++j) m[r][j] -= f * m[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(RatMat m) {
  if (m.empty()) return 0;
  return rref_in_place(m, m[0].size()).size();
}

RatMat inverse(const RatMat& m) {
  std::size_t n = m.size();
  RatMat aug(n, RatVec(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw DimensionError("inverse: matrix not square");
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  auto piv = rref_in_place(aug, n);
  if (piv.size() != n) throw DimensionError("inverse: singular matrix");
  RatMat r(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i][j] = aug[i][n + j];
  return r;
}

std::vector<RatVec> null_space(const RatMat& m, std::size_t cols) {
  RatMat a = m;
  for (auto& row : a)
    if (row.size() != cols) throw DimensionError("null_space: ragged matrix");
  auto piv = rref_in_place(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVec x(cols);
    x[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -a[r][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

std::string to_string(const RatVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

RatVec parse_vector(std::string_view s) {
  RatVec out;
  std::size_t start = 0;
  while (true) {
    auto comma = s.find(',', start);
    out.push_back(Rat::parse(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace gammamod
