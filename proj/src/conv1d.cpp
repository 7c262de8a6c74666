#include "gammamod/conv1d.hpp"

#include <algorithm>

namespace gammamod {

RaySheaf::RaySheaf(std::vector<Rat> births) : births_(std::move(births)) { std::sort(births_.begin(), births_.end()); }

void check_line_gauge(const GaugeSpec& g) {
  const auto& cone = g.cone();
  if (cone.dim() != 1 || cone.normals().size() != 1 || cone.normals()[0][0].sign() >= 0)
    throw DomainError("ray sheaves use the cone (-inf, 0] on the line");
}

namespace {

Rat unit(const GaugeSpec& g) {
  check_line_gauge(g);
  return g.v()[0].abs();
}

}  // namespace

RaySheaf convolve_ball(const RaySheaf& F, const Rat& r, const GaugeSpec& g) {
  if (r.sign() < 0) throw DomainError("ball radius must be non-negative");
  Rat d = r * unit(g);
  std::vector<Rat> b;
  for (const auto& t : F.births()) b.push_back(t - d);
  return RaySheaf(std::move(b));
}

ClosedInterval antipodal_hull(const ClosedInterval& s) {
  if (s.hi && *s.hi < s.lo) throw DomainError("empty interval");
  // fiber over x is s cap (-inf, x], nonempty and compact exactly for x >= lo
  return {s.lo, std::nullopt};
}

bool interval_is_gamma_fixed(const ClosedInterval& s) {
  ClosedInterval h = antipodal_hull(s);
  return h.lo == s.lo && h.hi == s.hi;
}

bool gamma_fixed_check(const RaySheaf& F) {
  for (const auto& t : F.births())
    if (!interval_is_gamma_fixed({t, std::nullopt})) return false;
  return true;
}

namespace {

// allowed(j, i): Hom(ray(src_i - d), ray(dst_j)) is nonzero.
std::vector<std::vector<bool>> pattern(const std::vector<Rat>& src, const std::vector<Rat>& dst, const Rat& d) {
  std::vector<std::vector<bool>> a(dst.size(), std::vector<bool>(src.size()));
  for (std::size_t j = 0; j < dst.size(); ++j)
    for (std::size_t i = 0; i < src.size(); ++i) a[j][i] = src[i] - d <= dst[j];
  return a;
}

std::size_t count(const std::vector<std::vector<bool>>& a) {
  std::size_t n = 0;
  for (const auto& r : a)
    for (bool b : r) n += b;
  return n;
}

bool fits(const FieldMat& m, const std::vector<std::vector<bool>>& a) {
  for (std::size_t j = 0; j < m.rows(); ++j)
    for (std::size_t i = 0; i < m.cols(); ++i)
      if (m(j, i) && !a[j][i]) return false;
  return true;
}

}  // namespace

bool c_isomorphic_by_matching(const RaySheaf& F, const RaySheaf& G, const Rat& c, const GaugeSpec& g) {
  if (c.sign() < 0) throw DomainError("c must be non-negative");
  if (F.size() != G.size()) return false;
  Rat d = c * unit(g);
  for (std::size_t i = 0; i < F.size(); ++i)
    if ((F.births()[i] - G.births()[i]).abs() > d) return false;
  return true;
}

std::optional<bool> c_isomorphic_by_search(const RaySheaf& F, const RaySheaf& G, const Rat& c, const GaugeSpec& g,
                                           const CIsoOptions& opt) {
  if (c.sign() < 0) throw DomainError("c must be non-negative");
  if (F.size() != G.size()) return false;
  const std::size_t m = F.size();
  if (m == 0) return true;
  Rat d = c * unit(g);
  auto pm = pattern(F.births(), G.births(), d);  // M : F -> G
  auto pn = pattern(G.births(), F.births(), d);  // N : G -> F
  // enumerate the side with fewer free entries, invert, test the other pattern
  const bool enum_m = count(pm) <= count(pn);
  const auto& pe = enum_m ? pm : pn;
  const auto& po = enum_m ? pn : pm;
  std::vector<std::pair<std::size_t, std::size_t>> free;
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i)
      if (pe[j][i]) free.emplace_back(j, i);
  const std::uint32_t p = opt.prime;
  double total = 1;
  for (std::size_t k = 0; k < free.size(); ++k) total *= p;
  if (total > static_cast<double>(std::uint64_t{1} << opt.budget_bits)) return std::nullopt;
  std::vector<std::uint32_t> digits(free.size(), 0);
  FieldMat id = FieldMat::identity(p, m);
  while (true) {
    FieldMat M(p, m, m);
    for (std::size_t k = 0; k < free.size(); ++k) M.set(free[k].first, free[k].second, digits[k]);
    if (rank(M) == m) {
      auto inv = solve_matrix(M, id);
      if (inv && fits(*inv, po)) return true;
    }
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
    if (k == digits.size()) break;
  }
  return false;
}

bool is_c_isomorphic(const RaySheaf& F, const RaySheaf& G, const Rat& c, const GaugeSpec& g, const CIsoOptions& opt) {
  if (c_isomorphic_by_matching(F, G, c, g)) return true;  // permutation witness
  if (auto r = c_isomorphic_by_search(F, G, c, g, opt)) return *r;
  return false;
}

DistanceResult convolution_distance(const RaySheaf& F, const RaySheaf& G, const GaugeSpec& g, const CIsoOptions& opt) {
  DistanceResult res;
  Rat u = unit(g);
  if (F.size() != G.size()) {
    res.infinite = true;
    res.hi_infinite = true;
    return res;
  }
  std::vector<Rat> cands{Rat(0)};
  for (const auto& s : F.births())
    for (const auto& t : G.births()) cands.push_back((s - t).abs() / u);
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  // smallest candidate that is c-isomorphic; the largest always is
  std::size_t lo = 0, hi = cands.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    ++res.decisions;
    if (is_c_isomorphic(F, G, cands[mid], g, opt))
      hi = mid;
    else
      lo = mid + 1;
  }
  res.value = cands[lo];
  res.attained = true;
  res.lo = res.hi = res.value;
  if (lo > 0) {
    ++res.decisions;
    if (is_c_isomorphic(F, G, (cands[lo - 1] + cands[lo]) / Rat(2), g, opt))
      throw std::logic_error("c-isomorphism is not monotone between candidates");
  }
  return res;
}

GammaModule ray_gamma_module(const RaySheaf& F, const FramePtr& frame, std::uint32_t p) {
  if (frame->dim() != 1 || frame->sign(0) > 0 || !frame->is_identity())
    throw DomainError("ray sheaves use the cone (-inf, 0] on the line");
  std::vector<Rat> b = F.births();
  b.erase(std::unique(b.begin(), b.end()), b.end());
  CellComplex cx(frame, {AxisGrid(b)});
  const auto& births = F.births();
  auto alive = [&](CellId c) {
    Rat y = cx.representative_grid(c)[0];
    std::vector<std::size_t> a;
    for (std::size_t i = 0; i < births.size(); ++i)
      if (births[i] < y) a.push_back(i);
    return a;
  };
  std::vector<std::size_t> dims(cx.num_cells());
  for (CellId c = 0; c < cx.num_cells(); ++c) dims[c] = alive(c).size();
  std::vector<std::vector<FieldMat>> maps(cx.num_cells(), std::vector<FieldMat>(1));
  for (CellId c = 0; c < cx.num_cells(); ++c) {
    auto lo = cx.down(c, 0);
    if (!lo) continue;
    auto ac = alive(c), al = alive(*lo);
    FieldMat m(p, al.size(), ac.size());
    for (std::size_t r = 0; r < al.size(); ++r)
      for (std::size_t k = 0; k < ac.size(); ++k)
        if (al[r] == ac[k]) m.set(r, k, 1);
    maps[c][0] = std::move(m);
  }
  return GammaModule(ArrModule(cx, p, std::move(dims), std::move(maps)));
}

ConvComparison compare_with_interleaving(const RaySheaf& F, const RaySheaf& G, const GaugeSpec& g,
                                         const DistanceOptions& opt) {
  check_line_gauge(g);
  FramePtr frame = make_frame(g.cone());
  ConvComparison r;
  r.d_conv = convolution_distance(F, G, g);
  r.d_int = interleaving_distance(ray_gamma_module(F, frame).module(), ray_gamma_module(G, frame).module(), g.v(), opt);
  r.equal = !r.d_int.budget_exceeded && same_distance(r.d_conv, r.d_int);
  return r;
}

ProperReport properness_report(const std::vector<ClosedInterval>& supports, const ConeSpec& cone) {
  if (cone.dim() != 1) throw DimensionError("supports live on the line");
  ConeSpec anti = antipode(cone);
  ProperReport r;
  for (const auto& s : supports) {
    PolySet A{{{s.lo}}, {}};
    if (s.hi)
      A.vertices.push_back({*s.hi});
    else
      A.recession.push_back({Rat(1)});
    r.literal = r.literal && is_gamma_proper(cone, A);
    r.mirrored = r.mirrored && is_gamma_proper(anti, A);
  }
  return r;
}

ProperReport properness_report(const RaySheaf& F, const ConeSpec& cone) {
  std::vector<ClosedInterval> s;
  for (const auto& t : F.births()) s.push_back({t, std::nullopt});
  return properness_report(s, cone);
}

}  // namespace gammamod
