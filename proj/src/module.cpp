#include "gammamod/module.hpp"

#include "gammamod/errors.hpp"

namespace gammamod {

ArrModule::ArrModule(CellComplex complex, std::uint32_t p, std::vector<std::size_t> dims,
                     std::vector<std::vector<FieldMat>> down_maps)
    : complex_(std::move(complex)), p_(p), dims_(std::move(dims)), maps_(std::move(down_maps)) {
  const std::size_t n = complex_.num_cells(), d = complex_.dim();
  if (dims_.size() != n) throw DimensionError("module needs one dimension per cell");
  if (maps_.size() != n) throw DimensionError("module needs one map list per cell");
  for (CellId c = 0; c < n; ++c) {
    if (maps_[c].size() != d) maps_[c].resize(d);
    for (std::size_t i = 0; i < d; ++i) {
      auto lo = complex_.down(c, i);
      if (!lo) {
        maps_[c][i] = FieldMat(p_, 0, 0);
        continue;
      }
      const auto& m = maps_[c][i];
      if (m.prime() != p_ || m.rows() != dims_[*lo] || m.cols() != dims_[c])
        throw DimensionError("structure map at cell " + std::to_string(c) + " axis " + std::to_string(i) +
                             " has shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                             ", expected " + std::to_string(dims_[*lo]) + "x" + std::to_string(dims_[c]));
    }
  }
}

ArrModule ArrModule::zero(const CellComplex& complex, std::uint32_t p) {
  const std::size_t n = complex.num_cells();
  std::vector<std::vector<FieldMat>> maps(n, std::vector<FieldMat>(complex.dim(), FieldMat(p, 0, 0)));
  return ArrModule(complex, p, std::vector<std::size_t>(n, 0), std::move(maps));
}

FieldMat ArrModule::map_between(CellId hi, CellId lo) const {
  if (!complex_.cell_leq(lo, hi)) throw DomainError("map_between: cells are not ordered");
  FieldMat m = FieldMat::identity(p_, dims_[hi]);
  CellId cur = hi;
  for (std::size_t i = 0; i < complex_.dim(); ++i)
    while (complex_.axis_index(cur, i) != complex_.axis_index(lo, i)) {
      m = maps_[cur][i] * m;
      cur = *complex_.down(cur, i);
    }
  return m;
}

FieldMat ArrModule::map_at(const RatVec& hi, const RatVec& lo) const {
  return map_between(complex_.cell_of(hi), complex_.cell_of(lo));
}

std::size_t ArrModule::total_dim() const {
  std::size_t s = 0;
  for (auto d : dims_) s += d;
  return s;
}

bool ArrModule::is_zero() const { return total_dim() == 0; }

bool operator==(const ArrModule& a, const ArrModule& b) {
  if (a.p_ != b.p_ || a.dims_ != b.dims_ || !(a.complex_ == b.complex_)) return false;
  for (CellId c = 0; c < a.dims_.size(); ++c)
    for (std::size_t i = 0; i < a.complex_.dim(); ++i)
      if (a.complex_.down(c, i) && !(a.maps_[c][i] == b.maps_[c][i])) return false;
  return true;
}

std::string SquareViolation::describe() const {
  std::string s = "square at cell [";
  for (std::size_t i = 0; i < cell.size(); ++i) s += (i ? "," : "") + std::to_string(cell[i]);
  return s + "] on axes " + std::to_string(axis_a) + "," + std::to_string(axis_b) + " does not commute";
}

std::optional<SquareViolation> validate(const ArrModule& F) {
  const auto& cx = F.complex();
  for (CellId c = 0; c < cx.num_cells(); ++c)
    for (std::size_t i = 0; i < cx.dim(); ++i) {
      auto di = cx.down(c, i);
      if (!di) continue;
      for (std::size_t j = i + 1; j < cx.dim(); ++j) {
        auto dj = cx.down(c, j);
        if (!dj) continue;
        FieldMat a = F.down_map(*di, j) * F.down_map(c, i);
        FieldMat b = F.down_map(*dj, i) * F.down_map(c, j);
        if (!(a == b)) return SquareViolation{cx.index(c), i, j};
      }
    }
  return std::nullopt;
}

namespace {

ArrModule indicator(const CellComplex& c, std::uint32_t p, const std::vector<bool>& support) {
  const std::size_t n = c.num_cells();
  std::vector<std::size_t> dims(n);
  for (CellId x = 0; x < n; ++x) dims[x] = support[x] ? 1 : 0;
  std::vector<std::vector<FieldMat>> maps(n, std::vector<FieldMat>(c.dim()));
  for (CellId x = 0; x < n; ++x)
    for (std::size_t i = 0; i < c.dim(); ++i) {
      auto lo = c.down(x, i);
      if (!lo) continue;
      FieldMat m(p, dims[*lo], dims[x]);
      if (support[x] && support[*lo]) m.set(0, 0, 1);
      maps[x][i] = std::move(m);
    }
  return ArrModule(c, p, std::move(dims), std::move(maps));
}

}  // namespace

ArrModule principal_module(const CellComplex& c, const RatVec& x, std::uint32_t p) {
  CellComplex r = refine_with_point(c, x);
  CellId top = r.cell_of(x);
  std::vector<bool> support(r.num_cells());
  for (CellId a = 0; a < r.num_cells(); ++a) support[a] = r.cell_leq(a, top);
  return indicator(r, p, support);
}

ArrModule point_module(const CellComplex& c, const RatVec& x, std::uint32_t p) {
  CellId at = c.cell_of(x);
  if (!c.is_fully_point(at)) throw DomainError("point module needs a vertex of the arrangement, got " + to_string(x));
  std::vector<bool> support(c.num_cells(), false);
  support[at] = true;
  return indicator(c, p, support);
}

ArrModule pullback(const ArrModule& F, const CellComplex& target, const std::vector<CellId>& to_source) {
  if (to_source.size() != target.num_cells()) throw DimensionError("pullback: cell map has wrong length");
  const auto p = F.prime();
  const std::size_t n = target.num_cells();
  std::vector<std::size_t> dims(n);
  for (CellId c = 0; c < n; ++c) dims[c] = F.dim(to_source[c]);
  std::vector<std::vector<FieldMat>> maps(n, std::vector<FieldMat>(target.dim()));
  for (CellId c = 0; c < n; ++c)
    for (std::size_t i = 0; i < target.dim(); ++i) {
      auto lo = target.down(c, i);
      if (!lo) continue;
      CellId a = to_source[c], b = to_source[*lo];
      if (!F.complex().cell_leq(b, a)) throw InvariantError("pullback: cell map is not monotone");
      maps[c][i] = a == b ? FieldMat::identity(p, dims[c]) : F.map_between(a, b);
    }
  return ArrModule(target, p, std::move(dims), std::move(maps));
}

ArrModule refine(const ArrModule& F, const CellComplex& fine) { return pullback(F, fine, cell_map(fine, F.complex())); }

ArrModule direct_sum(const ArrModule& F, const ArrModule& G) {
  if (F.prime() != G.prime()) throw DomainError("direct sum: field mismatch");
  auto r = common_refinement(F.complex(), G.complex());
  ArrModule a = pullback(F, r.complex, r.to_first);
  ArrModule b = pullback(G, r.complex, r.to_second);
  const auto& cx = r.complex;
  std::vector<std::size_t> dims(cx.num_cells());
  std::vector<std::vector<FieldMat>> maps(cx.num_cells(), std::vector<FieldMat>(cx.dim()));
  for (CellId c = 0; c < cx.num_cells(); ++c) {
    dims[c] = a.dim(c) + b.dim(c);
    for (std::size_t i = 0; i < cx.dim(); ++i)
      if (cx.down(c, i)) maps[c][i] = block_diag(a.down_map(c, i), b.down_map(c, i));
  }
  return ArrModule(cx, F.prime(), std::move(dims), std::move(maps));
}

ArrModule shift(const ArrModule& F, const RatVec& v) {
  CellComplex c = shift_complex(F.complex(), v);
  std::vector<std::vector<FieldMat>> maps(c.num_cells(), std::vector<FieldMat>(c.dim()));
  for (CellId x = 0; x < c.num_cells(); ++x)
    for (std::size_t i = 0; i < c.dim(); ++i) maps[x][i] = F.down_map(x, i);
  return ArrModule(c, F.prime(), F.dims(), std::move(maps));
}

bool equal_after_refinement(const ArrModule& F, const ArrModule& G) {
  if (F.prime() != G.prime()) return false;
  auto r = common_refinement(F.complex(), G.complex());
  return pullback(F, r.complex, r.to_first) == pullback(G, r.complex, r.to_second);
}

}  // namespace gammamod
