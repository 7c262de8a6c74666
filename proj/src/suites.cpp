#include "gammamod/suites.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace gammamod {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"isometry", "ephemeral", "gauge", "conv-vs-int", "serre"};
  return names;
}

ConeSpec skewed_cone(std::size_t n) {
  // y_1 <= 0, y_0 <= y_1, remaining coordinates <= 0
  RatMat normals;
  for (std::size_t i = 0; i < n; ++i) {
    RatVec xi = zeros(n);
    if (i == 0) {
      xi[0] = -1;
      xi[1] = 1;
    } else {
      xi[i] = -1;
    }
    normals.push_back(xi);
  }
  return ConeSpec::from_normals(normals);
}

FramePtr sample_frame(std::mt19937_64& rng, std::size_t n) {
  if (n == 1) return make_frame(ConeSpec::orthant(1, -1));
  switch (draw(rng, 3)) {
    case 0: return make_frame(ConeSpec::orthant(n, -1));
    case 1: return make_frame(ConeSpec::orthant(n, 1));
    default: return make_frame(skewed_cone(n));
  }
}

RatVec sample_direction(std::mt19937_64& rng, const ConeSpec& cone) {
  RatVec v = zeros(cone.dim());
  for (const auto& g : cone.generators()) {
    Rat w(static_cast<long long>(1 + draw(rng, 3)), static_cast<long long>(1 + draw(rng, 2)));
    v = sub(v, scale(w, g));
  }
  return v;
}

namespace {

Rat sample_coordinate(std::mt19937_64& rng, int range) {
  long long m = static_cast<long long>(draw(rng, 4 * range + 1)) - 2 * range;
  return draw(rng, 4) == 0 ? Rat(m, 2) : Rat(m / 2);
}

}  // namespace

CellComplex sample_complex(std::mt19937_64& rng, const FramePtr& frame, std::size_t max_breakpoints) {
  std::vector<AxisGrid> axes;
  for (std::size_t i = 0; i < frame->dim(); ++i) {
    std::size_t k = 1 + draw(rng, max_breakpoints);
    std::vector<Rat> b;
    for (std::size_t t = 0; t < k; ++t) b.push_back(sample_coordinate(rng, 4));
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    axes.emplace_back(std::move(b));
  }
  return CellComplex(frame, std::move(axes));
}

namespace {

// k on cells with a fixed point index on axis 0 and a contiguous index range
// on the last axis, identities in between.
ArrModule slab_module(std::mt19937_64& rng, const CellComplex& cx, std::uint32_t p) {
  const std::size_t d = cx.dim(), last = d - 1;
  CellIndex base(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t k = cx.axis(i).num_cells();
    base[i] = draw(rng, k);
    if (i == 0 && d > 1 && !AxisGrid::is_point(base[i])) base[i] = base[i] == 0 ? 1 : base[i] - 1;
  }
  std::size_t k = cx.axis(last).num_cells();
  std::size_t a = draw(rng, k), b = draw(rng, k);
  if (a > b) std::swap(a, b);
  std::vector<std::size_t> dims(cx.num_cells(), 0);
  for (std::size_t t = a; t <= b; ++t) {
    CellIndex idx = base;
    idx[last] = t;
    dims[cx.id(idx)] = 1;
  }
  std::vector<std::vector<FieldMat>> maps(cx.num_cells(), std::vector<FieldMat>(d));
  for (CellId c = 0; c < cx.num_cells(); ++c)
    for (std::size_t i = 0; i < d; ++i)
      if (auto lo = cx.down(c, i)) {
        maps[c][i] = FieldMat(p, dims[*lo], dims[c]);
        if (i == last && dims[c] && dims[*lo]) maps[c][i].set(0, 0, 1);
      }
  return ArrModule(cx, p, std::move(dims), std::move(maps));
}

RatVec vertex(std::mt19937_64& rng, const CellComplex& cx) {
  RatVec y;
  for (std::size_t i = 0; i < cx.dim(); ++i) {
    const auto& b = cx.axis(i).breakpoints();
    y.push_back(b[draw(rng, b.size())]);
  }
  return cx.frame().from_grid(y);
}

RatVec any_point(std::mt19937_64& rng, std::size_t n) {
  RatVec x;
  for (std::size_t i = 0; i < n; ++i) x.push_back(sample_coordinate(rng, 4));
  return x;
}

ArrModule sample_simple(std::mt19937_64& rng, const FramePtr& frame, std::uint32_t p) {
  CellComplex cx = sample_complex(rng, frame);
  switch (draw(rng, 4)) {
    case 0: return point_module(cx, vertex(rng, cx), p);
    case 1: return slab_module(rng, cx, p);
    case 2: return principal_module(cx, any_point(rng, frame->dim()), p);
    default: {
      RandomModuleOptions opt;
      opt.prime = p;
      opt.max_cell_dim = 2;
      opt.zero_weight = 2;
      return random_module_on(rng, cx, opt);
    }
  }
}

}  // namespace

ArrModule sample_mixed_module(std::mt19937_64& rng, const FramePtr& frame, std::uint32_t p) {
  if (draw(rng, 5) == 0) return direct_sum(sample_simple(rng, frame, p), sample_simple(rng, frame, p));
  return sample_simple(rng, frame, p);
}

ArrModule jiggle(std::mt19937_64& rng, const ArrModule& F) {
  const auto& cx = F.complex();
  std::vector<AxisGrid> axes;
  for (const auto& a : cx.axes()) {
    std::vector<Rat> b = a.breakpoints();
    for (int attempt = 0; attempt < 8; ++attempt) {
      std::vector<Rat> m;
      for (const auto& x : a.breakpoints()) m.push_back(x + Rat(static_cast<long long>(draw(rng, 5)) - 2, 2));
      if (std::is_sorted(m.begin(), m.end()) && std::adjacent_find(m.begin(), m.end()) == m.end()) {
        b = std::move(m);
        break;
      }
    }
    axes.emplace_back(std::move(b));
  }
  CellComplex moved(cx.frame_ptr(), std::move(axes));
  std::vector<std::vector<FieldMat>> maps(cx.num_cells());
  for (CellId c = 0; c < cx.num_cells(); ++c)
    for (std::size_t i = 0; i < cx.dim(); ++i) maps[c].push_back(F.down_map(c, i));
  return ArrModule(std::move(moved), F.prime(), F.dims(), std::move(maps));
}

ArrModule box_module(std::mt19937_64& rng, const CellComplex& cx, std::uint32_t p) {
  const std::size_t d = cx.dim();
  std::vector<std::pair<std::size_t, std::size_t>> range;
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t k = cx.axis(i).num_cells();
    if (k < 3) return ArrModule::zero(cx, p);
    std::size_t a = 1 + draw(rng, k - 2), b = 1 + draw(rng, k - 2);
    range.emplace_back(std::min(a, b), std::max(a, b));
  }
  auto inside = [&](CellId c) {
    for (std::size_t i = 0; i < d; ++i) {
      auto k = cx.axis_index(c, i);
      if (k < range[i].first || k > range[i].second) return false;
    }
    return true;
  };
  std::vector<std::size_t> dims(cx.num_cells());
  for (CellId c = 0; c < cx.num_cells(); ++c) dims[c] = inside(c);
  std::vector<std::vector<FieldMat>> maps(cx.num_cells(), std::vector<FieldMat>(d));
  for (CellId c = 0; c < cx.num_cells(); ++c)
    for (std::size_t i = 0; i < d; ++i)
      if (auto lo = cx.down(c, i)) {
        maps[c][i] = FieldMat(p, dims[*lo], dims[c]);
        if (dims[c] && dims[*lo]) maps[c][i].set(0, 0, 1);
      }
  return ArrModule(cx, p, std::move(dims), std::move(maps));
}

std::pair<ArrModule, ArrModule> sample_related_pair(std::mt19937_64& rng, const FramePtr& frame,
                                                    const RandomModuleOptions& opt) {
  std::size_t mode = draw(rng, 3);
  RandomModuleOptions o = opt;
  if (mode != 0 && o.max_cell_dim > 1) --o.max_cell_dim;  // room for the box summand
  ArrModule F = random_module(rng(), frame, o);
  ArrModule G = jiggle(rng, F);
  switch (mode) {
    case 0: break;
    case 1: G = direct_sum(G, box_module(rng, sample_complex(rng, frame), opt.prime)); break;
    default: F = direct_sum(F, box_module(rng, sample_complex(rng, frame), opt.prime)); break;
  }
  return {std::move(F), std::move(G)};
}

RaySheaf sample_ray_sheaf(std::mt19937_64& rng, std::size_t max_size) {
  std::size_t m = draw(rng, max_size + 1);
  std::vector<Rat> b;
  for (std::size_t i = 0; i < m; ++i) b.push_back(sample_coordinate(rng, 3));
  return RaySheaf(std::move(b));
}

std::optional<Rat> bottleneck_distance(const RaySheaf& F, const RaySheaf& G, const Rat& unit) {
  if (F.size() != G.size()) return std::nullopt;
  std::vector<std::size_t> perm(F.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<Rat> best;
  do {
    Rat worst(0);
    for (std::size_t i = 0; i < perm.size(); ++i) worst = std::max(worst, (F.births()[i] - G.births()[perm[i]]).abs());
    if (!best || worst < *best) best = worst;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return *best / unit;
}

namespace {

using Check = std::function<std::optional<std::string>(std::mt19937_64&, std::uint64_t)>;

std::string describe(const DistanceResult& d) {
  std::string s = distance_string(d);
  if (d.budget_exceeded) s += " (budget exceeded)";
  return s;
}

std::optional<std::string> isometry_case(std::mt19937_64& rng, std::uint64_t seed) {
  std::size_t n = 1 + seed % 2;
  FramePtr frame = sample_frame(rng, n);
  RandomModuleOptions opt;
  opt.max_cell_dim = 3;
  opt.max_breakpoints = n == 1 ? 3 : 2;
  opt.zero_weight = 2;
  auto [F, G] = sample_related_pair(rng, frame, opt);
  RatVec v = sample_direction(rng, frame->cone());
  auto r = isometry_check(F, G, v);
  if (r.lhs.budget_exceeded || r.rhs.budget_exceeded) return "budget exceeded";
  if (!r.equal) return "d(F,G) = " + describe(r.lhs) + " but d(beta F, beta G) = " + describe(r.rhs);
  return std::nullopt;
}

std::optional<std::string> ephemeral_case(std::mt19937_64& rng, std::uint64_t seed) {
  FramePtr frame = sample_frame(rng, 1 + seed % 2);
  ArrModule F = sample_mixed_module(rng, frame);
  ArrModule Z = ArrModule::zero(F.complex(), F.prime());
  RatVec v = sample_direction(rng, frame->cone());
  bool a = is_ephemeral(F);
  bool b = vanishes_on_open_cells(F);
  bool c = beta_star(F).module().is_zero();
  auto d = interleaving_distance(F, Z, v);
  if (d.budget_exceeded) return "budget exceeded";
  bool dz = !d.infinite && d.value.is_zero();
  std::vector<RatVec> samples{scale(Rat(1, 64), v), v, scale(Rat(1, 3), v)};
  for (int k = 0; k < 2; ++k) samples.push_back(sample_direction(rng, frame->cone()));
  auto probe = inter_probe(F, Z, samples);
  bool e = std::all_of(probe.begin(), probe.end(), [](bool x) { return x; });
  if (a == b && b == c && c == dz && dz == e) return std::nullopt;
  auto t = [](bool x) { return x ? "1" : "0"; };
  return std::string("disagreement: is_ephemeral=") + t(a) + " open-cell-vanishing=" + t(b) + " beta-zero=" + t(c) +
         " distance-zero=" + t(dz) + " probes=" + t(e);
}

std::optional<std::string> gauge_case(std::mt19937_64& rng, std::uint64_t) {
  std::size_t n = 1 + draw(rng, 3);
  ConeSpec cone = n == 1 || draw(rng, 2) ? ConeSpec::orthant(n, draw(rng, 2) ? 1 : -1) : skewed_cone(n);
  GaugeSpec g(cone, sample_direction(rng, cone));
  auto point = [&] {
    RatVec x;
    for (std::size_t i = 0; i < n; ++i)
      x.push_back(Rat(static_cast<long long>(draw(rng, 41)) - 20, static_cast<long long>(1 + draw(rng, 4))));
    return x;
  };
  RatVec x = draw(rng, 10) == 0 ? zeros(n) : point(), y = point();
  Rat lam(static_cast<long long>(draw(rng, 21)) - 10, static_cast<long long>(1 + draw(rng, 3)));
  Rat gx = gauge(g, x);
  if (gx.sign() < 0) return "negative gauge";
  if (gx.is_zero() != is_zero(x)) return "gauge vanishes off the origin";
  if (gauge(g, scale(lam, x)) != lam.abs() * gx) return "not absolutely homogeneous";
  if (gauge(g, add(x, y)) > gx + gauge(g, y)) return "triangle inequality fails";
  // definitional bisection on membership in r * B_v
  Rat lo(0), hi(1);
  while (!ball_membership(g, hi, x)) hi *= 2;
  const Rat tol(1, 1LL << 31);
  while (hi - lo > tol) {
    Rat mid = (lo + hi) / Rat(2);
    (ball_membership(g, mid, x) ? hi : lo) = mid;
  }
  if ((gx - hi).abs() > Rat(1, 1LL << 30)) return "closed form " + gx.str() + " outside bisection bracket";
  if (!ball_membership(g, gx, x)) return "x is not in the closed ball of radius g(x)";
  if (gx.sign() > 0 && ball_membership(g, gx * Rat((1LL << 40) - 1, 1LL << 40), x)) return "ball radius below g(x) contains x";
  return std::nullopt;
}

std::optional<std::string> conv_case(std::mt19937_64& rng, std::uint64_t seed) {
  static const Rat units[] = {Rat(1), Rat(3), Rat(1, 2)};
  Rat u = units[seed % 3];
  GaugeSpec g(ConeSpec::orthant(1, -1), {u});
  RaySheaf F = sample_ray_sheaf(rng, 5);
  RaySheaf G = draw(rng, 4) == 0 ? sample_ray_sheaf(rng, 5) : [&] {
    std::vector<Rat> b;
    for (std::size_t i = 0; i < F.size(); ++i) b.push_back(sample_coordinate(rng, 3));
    return RaySheaf(std::move(b));
  }();
  auto r = compare_with_interleaving(F, G, g);
  if (r.d_int.budget_exceeded) return "budget exceeded";
  if (!r.equal) return "d_conv = " + describe(r.d_conv) + " but d_int = " + describe(r.d_int);
  auto bn = bottleneck_distance(F, G, u);
  if (bn.has_value() == r.d_conv.infinite || (bn && *bn != r.d_conv.value))
    return "bottleneck " + (bn ? bn->str() : std::string("inf")) + " vs d_conv " + describe(r.d_conv);
  return std::nullopt;
}

std::optional<std::string> serre_case(std::mt19937_64& rng, std::uint64_t seed) {
  FramePtr frame = sample_frame(rng, 1 + seed % 2);
  CellComplex cx = sample_complex(rng, frame);
  RandomModuleOptions opt;
  opt.max_cell_dim = 2;
  ArrModule F = random_module_on(rng, cx, opt), G = random_module_on(rng, cx, opt);
  ModMorphism f = random_morphism(rng, F, G);
  auto e = exactness_probe(f);
  if (!e.exact) return "beta_* not exact on ker/im sequence: " + e.detail;
  auto id = exactness_probe(ModMorphism::identity(F));
  if (!id.exact) return "identity: " + id.detail;
  auto ker = pointwise_kernel(f);
  if (is_ephemeral(ker.module)) {
    auto im = pointwise_image(f);
    if (!(beta_star(F).module().dims() == beta_star(im.module).module().dims()))
      return "ephemeral kernel but beta_* changes dimensions";
  }
  if (!(beta_star(direct_sum(F, G)).module().dims() == direct_sum(beta_star(F).module(), beta_star(G).module()).dims()))
    return "beta_* does not preserve direct sums";
  return std::nullopt;
}

}  // namespace

SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t count) {
  Check check;
  if (name == "isometry") check = isometry_case;
  else if (name == "ephemeral") check = ephemeral_case;
  else if (name == "gauge") check = gauge_case;
  else if (name == "conv-vs-int") check = conv_case;
  else if (name == "serre") check = serre_case;
  else throw DomainError("unknown suite \"" + name + "\"");
  SuiteReport rep;
  rep.suite = name;
  rep.seed = seed;
  rep.count = count;
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t s = seed + i;
    std::mt19937_64 rng(s);
    std::optional<std::string> err;
    try {
      err = check(rng, s);
    } catch (const std::exception& e) {
      err = std::string("exception: ") + e.what();
    }
    if (err)
      rep.failures.push_back({s, *err});
    else
      ++rep.passed;
  }
  return rep;
}

}  // namespace gammamod
