#include "gammamod/diagram.hpp"

#include "gammamod/errors.hpp"

#include <algorithm>

namespace gammamod {

Diagram::Diagram(std::uint32_t p, std::vector<std::size_t> dims, std::vector<Arrow> arrows)
    : p_(p), dims_(std::move(dims)), arrows_(std::move(arrows)) {
  const std::size_t n = dims_.size();
  std::vector<std::vector<std::size_t>> in(n);
  std::vector<std::size_t> indeg(n, 0);
  for (std::size_t i = 0; i < arrows_.size(); ++i) {
    const auto& a = arrows_[i];
    if (a.src >= n || a.dst >= n || a.src == a.dst) throw InvariantError("diagram arrow has bad endpoints");
    if (a.map.rows() != dims_[a.dst] || a.map.cols() != dims_[a.src] || a.map.prime() != p_)
      throw DimensionError("diagram arrow " + std::to_string(a.src) + "->" + std::to_string(a.dst) + " has wrong shape");
    in[a.dst].push_back(i);
    ++indeg[a.dst];
  }
  // Kahn order; a cycle means the arrows do not come from a poset.
  std::vector<std::size_t> order, queue;
  for (std::size_t v = 0; v < n; ++v)
    if (!indeg[v]) queue.push_back(v);
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t i = 0; i < arrows_.size(); ++i) out[arrows_[i].src].push_back(i);
  while (!queue.empty()) {
    auto v = queue.back();
    queue.pop_back();
    order.push_back(v);
    for (auto i : out[v])
      if (--indeg[arrows_[i].dst] == 0) queue.push_back(arrows_[i].dst);
  }
  if (order.size() != n) throw InvariantError("diagram arrows contain a cycle");

  composites_.assign(n, std::vector<std::optional<FieldMat>>(n));
  for (std::size_t a = 0; a < n; ++a) {
    composites_[a][a] = FieldMat::identity(p_, dims_[a]);
    for (auto b : order) {
      for (auto i : in[b]) {
        const auto& arr = arrows_[i];
        if (!composites_[a][arr.src]) continue;
        FieldMat c = arr.map * *composites_[a][arr.src];
        if (!composites_[a][b]) {
          composites_[a][b] = std::move(c);
        } else if (!(*composites_[a][b] == c)) {
          throw InvariantError("diagram not functorial: paths " + std::to_string(a) + " -> " + std::to_string(b) +
                               " disagree");
        }
      }
    }
  }
}

std::optional<FieldMat> Diagram::composite(std::size_t a, std::size_t b) const { return composites_.at(a).at(b); }

namespace {

std::vector<std::size_t> offsets(const Diagram& d) {
  std::vector<std::size_t> off(d.size() + 1, 0);
  for (std::size_t i = 0; i < d.size(); ++i) off[i + 1] = off[i] + d.dim(i);
  return off;
}

}  // namespace

LimitResult limit(const Diagram& d) {
  auto off = offsets(d);
  const std::size_t total = off.back();
  std::size_t rows = 0;
  for (const auto& a : d.arrows()) rows += d.dim(a.dst);
  // For each arrow a -> b: map * x_a - x_b = 0.
  FieldMat c(d.prime(), rows, total);
  std::size_t r0 = 0;
  for (const auto& a : d.arrows()) {
    c.set_block(r0, off[a.src], a.map);
    c.set_block(r0, off[a.dst], FieldMat::identity(d.prime(), d.dim(a.dst)).scaled(d.prime() - 1));
    r0 += d.dim(a.dst);
  }
  FieldMat k = kernel_basis(c);
  LimitResult res;
  res.dim = k.cols();
  for (std::size_t i = 0; i < d.size(); ++i) res.projections.push_back(k.block(off[i], 0, d.dim(i), k.cols()));
  return res;
}

ColimitResult colimit(const Diagram& d) {
  auto off = offsets(d);
  const std::size_t total = off.back();
  std::size_t cols = 0;
  for (const auto& a : d.arrows()) cols += d.dim(a.src);
  // Relations e_a - map(e_a) for every basis vector of every source.
  FieldMat rel(d.prime(), total, cols);
  std::size_t c0 = 0;
  for (const auto& a : d.arrows()) {
    rel.set_block(off[a.src], c0, FieldMat::identity(d.prime(), d.dim(a.src)));
    rel.set_block(off[a.dst], c0, a.map.scaled(d.prime() - 1));
    c0 += d.dim(a.src);
  }
  FieldMat q = cokernel_projection(rel);
  ColimitResult res;
  res.dim = q.rows();
  for (std::size_t i = 0; i < d.size(); ++i) res.injections.push_back(q.block(0, off[i], q.rows(), d.dim(i)));
  return res;
}

std::size_t LinearSystem::add_unknown(std::size_t rows, std::size_t cols) {
  std::size_t off = num_variables();
  shapes_.emplace_back(rows, cols);
  offset_.push_back(off);
  return shapes_.size() - 1;
}

void LinearSystem::add_equation(std::vector<Term> terms, FieldMat rhs) {
  for (const auto& t : terms) {
    if (t.unknown >= shapes_.size()) throw DimensionError("linear system: unknown index out of range");
    auto [r, c] = shapes_[t.unknown];
    if (t.left.cols() != r || t.right.rows() != c || t.left.rows() != rhs.rows() || t.right.cols() != rhs.cols())
      throw DimensionError("linear system: term shape mismatch");
  }
  equations_.push_back({std::move(terms), std::move(rhs)});
}

std::pair<FieldMat, FieldVec> LinearSystem::assemble() const {
  std::size_t rows = 0;
  for (const auto& e : equations_) rows += e.rhs.rows() * e.rhs.cols();
  FieldMat a(p_, rows, num_variables());
  FieldVec b(rows, 0);
  std::size_t r0 = 0;
  for (const auto& e : equations_) {
    const std::size_t er = e.rhs.rows(), ec = e.rhs.cols();
    for (const auto& t : e.terms) {
      auto [ur, uc] = shapes_[t.unknown];
      const std::size_t base = offset_[t.unknown];
      // (L X R)(i,j) = sum_{r,c} L(i,r) X(r,c) R(c,j)
      for (std::size_t i = 0; i < er; ++i)
        for (std::size_t r = 0; r < ur; ++r) {
          std::uint64_t l = t.left(i, r);
          if (!l) continue;
          for (std::size_t c = 0; c < uc; ++c)
            for (std::size_t j = 0; j < ec; ++j) {
              std::uint64_t rr = t.right(c, j);
              if (!rr) continue;
              std::size_t row = r0 + i * ec + j, col = base + r * uc + c;
              a.set(row, col, static_cast<long long>((a(row, col) + l * rr) % p_));
            }
        }
    }
    for (std::size_t i = 0; i < er; ++i)
      for (std::size_t j = 0; j < ec; ++j) b[r0 + i * ec + j] = e.rhs(i, j);
    r0 += er * ec;
  }
  return {std::move(a), std::move(b)};
}

std::vector<FieldMat> LinearSystem::unpack(const FieldVec& x) const {
  if (x.size() != num_variables()) throw DimensionError("linear system: variable vector length mismatch");
  std::vector<FieldMat> out;
  for (std::size_t k = 0; k < shapes_.size(); ++k) {
    auto [r, c] = shapes_[k];
    FieldMat m(p_, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, x[offset_[k] + i * c + j]);
    out.push_back(std::move(m));
  }
  return out;
}

FieldVec LinearSystem::pack(const std::vector<FieldMat>& xs) const {
  if (xs.size() != shapes_.size()) throw DimensionError("linear system: unknown count mismatch");
  FieldVec x(num_variables(), 0);
  for (std::size_t k = 0; k < shapes_.size(); ++k) {
    auto [r, c] = shapes_[k];
    if (xs[k].rows() != r || xs[k].cols() != c) throw DimensionError("linear system: unknown shape mismatch");
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) x[offset_[k] + i * c + j] = xs[k](i, j);
  }
  return x;
}

AffineSpace affine_solution_space(const LinearSystem& sys) {
  auto [a, b] = sys.assemble();
  AffineSpace s;
  s.particular = solve(a, b);
  s.basis = kernel_basis(a);
  return s;
}

}  // namespace gammamod
