#include "gammamod/errors.hpp"
#include "gammamod/interleave.hpp"
#include "gammamod/suites.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace gammamod;

namespace {

Rat R(long long n, long long d = 1) { return Rat(n, d); }

FramePtr line() { return make_frame(ConeSpec::orthant(1, -1)); }
FramePtr plane() { return make_frame(ConeSpec::orthant(2, -1)); }

ArrModule principal1(Rat x) { return principal_module(CellComplex(line()), {x}); }

bool interleaved(const ArrModule& F, const ArrModule& G, const RatVec& v) {
  return decide_interleaving(F, G, v).verdict == Verdict::interleaved;
}

}  // namespace

TEST_CASE("interleaving examples") {
  auto P0 = principal1(R(0)), P3 = principal1(R(3));
  auto w = is_interleaved(P0, P0, {R(0)});
  REQUIRE(w);
  for (const auto& m : w->f) CHECK(m.is_identity());
  CHECK_FALSE(verify_witness(P0, P0, *w));
  auto w3 = is_interleaved(P0, P3, {R(3)});
  REQUIRE(w3);
  CHECK_FALSE(verify_witness(P0, P3, *w3));
  CHECK_FALSE(is_interleaved(P0, P3, {R(2)}));
  CHECK(oracle::exhaustive_interleaving(P0, P3, {R(3)}).interleaved);
  CHECK_FALSE(oracle::exhaustive_interleaving(P0, P3, {R(2)}).interleaved);

  CellComplex c(plane(), {AxisGrid({R(0)}), AxisGrid({R(0)})});
  auto P = point_module(c, {R(0), R(0)});
  auto Z = ArrModule::zero(c, 2);
  for (RatVec v : {RatVec{R(1), R(1)}, RatVec{R(1, 8), R(3)}}) {
    auto wz = is_interleaved(P, Z, v);
    REQUIRE(wz);
    CHECK_FALSE(verify_witness(P, Z, *wz));
  }
  CHECK_FALSE(is_interleaved(P, Z, {R(0), R(0)}));
}

TEST_CASE("decision errors") {
  auto P0 = principal1(R(0));
  CHECK_THROWS_AS(decide_interleaving(P0, P0, {R(-1)}), DomainError);
  auto F3 = principal_module(CellComplex(line()), {R(0)}, 3);
  CHECK_THROWS_AS(decide_interleaving(P0, F3, {R(1)}), DomainError);
  CHECK_THROWS_AS(interleaving_distance(P0, P0, {R(0)}), DomainError);
  auto Q = principal_module(CellComplex(make_frame(ConeSpec::orthant(1, 1))), {R(0)});
  CHECK_THROWS_AS(decide_interleaving(P0, Q, {R(1)}), DomainError);
}

TEST_CASE("distance examples") {
  auto P0 = principal1(R(0)), P3 = principal1(R(3));
  auto d = interleaving_distance(P0, P3, {R(1)});
  CHECK_FALSE(d.infinite);
  CHECK(d.value == R(3));
  CHECK(d.attained);
  REQUIRE(d.witness);
  CHECK_FALSE(verify_witness(P0, P3, *d.witness));
  CHECK(interleaving_distance(P0, P0, {R(1)}).value == R(0));
  CHECK(interleaving_distance(P0, P3, {R(3)}).value == R(1));
  CHECK(interleaving_distance(P0, P3, {R(1, 2)}).value == R(6));

  CellComplex c(line(), {AxisGrid({R(0)})});
  auto P = point_module(c, {R(0)});
  auto dz = interleaving_distance(P, ArrModule::zero(c, 2), {R(1)});
  CHECK(dz.value == R(0));
  CHECK_FALSE(dz.attained);
  CHECK(distance_string(dz) == "0");

  auto inf = interleaving_distance(P0, ArrModule::zero(c, 2), {R(1)});
  CHECK(inf.infinite);
  CHECK(distance_string(inf) == "inf");
}

TEST_CASE("candidate scales") {
  auto P0 = principal1(R(0)), P3 = principal1(R(3));
  auto c = candidate_scales(P0, P3, {R(1)});
  CHECK(c.front() == R(0));
  CHECK(std::is_sorted(c.begin(), c.end()));
  CHECK(std::find(c.begin(), c.end(), R(3)) != c.end());
  CHECK(std::find(c.begin(), c.end(), R(3, 2)) != c.end());
}

TEST_CASE("zero-interleaving criterion") {
  CellComplex c(plane(), {AxisGrid({R(0), R(1)}), AxisGrid({R(0)})});
  RatVec v{R(1), R(1)};
  CHECK(zero_interleaving_criterion(point_module(c, {R(1), R(0)}), v));
  CHECK_FALSE(zero_interleaving_criterion(principal_module(c, {R(0), R(0)}), v));
  CHECK(zero_interleaving_criterion(ArrModule::zero(c, 2), v));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 150; ++t) {
    auto f = t % 2 ? plane() : line();
    auto F = sample_mixed_module(rng, f);
    RatVec w = scale(R(1 + static_cast<long long>(rng() % 4), 2), sample_direction(rng, f->cone()));
    auto Z = ArrModule::zero(F.complex(), 2);
    CHECK(zero_interleaving_criterion(F, w) == interleaved(F, Z, w));
  }
}

TEST_CASE("decisions agree with exhaustive enumeration") {
  std::mt19937_64 rng(77);
  int checked = 0, yes = 0;
  for (int t = 0; t < 400 && checked < 120; ++t) {
    auto f = t % 3 == 0 ? plane() : line();
    RandomModuleOptions opt;
    opt.max_cell_dim = 1 + rng() % 2;
    opt.max_breakpoints = 2;
    opt.zero_weight = 2;
    auto [F, G] = sample_related_pair(rng, f, opt);
    if (F.total_dim() + G.total_dim() > 6) continue;
    RatVec v = scale(R(static_cast<long long>(rng() % 7), 2), sample_direction(rng, f->cone()));
    auto ex = oracle::exhaustive_interleaving(F, G, v);
    if (ex.skipped) continue;
    auto d = decide_interleaving(F, G, v);
    REQUIRE(d.verdict != Verdict::budget_exceeded);
    CHECK((d.verdict == Verdict::interleaved) == ex.interleaved);
    if (d.witness) CHECK_FALSE(verify_witness(F, G, *d.witness));
    ++checked;
    yes += ex.interleaved;
  }
  CHECK(checked >= 100);
  CHECK(yes > 10);
  CHECK(checked - yes > 10);
}

TEST_CASE("tampered witnesses are rejected") {
  auto P0 = principal1(R(0)), P3 = principal1(R(3));
  auto w = is_interleaved(P0, P3, {R(3)});
  REQUIRE(w);
  for (std::size_t c = 0; c < w->f.size(); ++c) {
    if (w->f[c].rows() == 0 || w->f[c].cols() == 0) continue;
    auto bad = *w;
    bad.f[c].set(0, 0, 1 - bad.f[c](0, 0));
    CHECK(verify_witness(P0, P3, bad));
  }
}

TEST_CASE("functors carry witnesses to witnesses") {
  std::mt19937_64 rng(21);
  int mapped = 0;
  for (int t = 0; t < 80; ++t) {
    auto f = t % 2 ? plane() : line();
    RandomModuleOptions opt;
    auto [F, G] = sample_related_pair(rng, f, opt);
    RatVec v = scale(R(1 + static_cast<long long>(rng() % 6), 2), sample_direction(rng, f->cone()));
    auto d = decide_interleaving(F, G, v);
    if (d.verdict != Verdict::interleaved) continue;
    ++mapped;
    auto wb = map_witness(*d.witness, WitnessFunctor::beta_star);
    CHECK_FALSE(verify_witness(beta_star(F).module(), beta_star(G).module(), wb));
    auto BF = beta_star(F), BG = beta_star(G);
    auto dg = decide_interleaving(BF.module(), BG.module(), v);
    REQUIRE(dg.verdict == Verdict::interleaved);
    auto wi = map_witness(*dg.witness, WitnessFunctor::beta_inv);
    CHECK_FALSE(verify_witness(beta_inv(BF), beta_inv(BG), wi));
    auto wa = map_witness(*dg.witness, WitnessFunctor::alpha_star);
    CHECK_FALSE(verify_witness(alpha_star(BF), alpha_star(BG), wa));
  }
  CHECK(mapped > 20);
}

TEST_CASE("inter probes") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 40; ++t) {
    auto f = t % 2 ? plane() : line();
    auto F = sample_mixed_module(rng, f);
    std::vector<RatVec> samples;
    for (int s = 0; s < 3; ++s)
      samples.push_back(scale(R(1 + static_cast<long long>(rng() % 4), 8), sample_direction(rng, f->cone())));
    auto B = beta_star(F);
    for (bool b : inter_probe(F, beta_inv(B), samples)) CHECK(b);
    for (bool b : inter_probe(F, alpha_star(B), samples)) CHECK(b);
    // upward closure in the antipodal order
    auto G = sample_mixed_module(rng, f);
    auto r = inter_probe(F, G, samples);
    for (std::size_t i = 0; i < samples.size(); ++i)
      if (r[i]) CHECK(interleaved(F, G, add(samples[i], sample_direction(rng, f->cone()))));
  }
}

TEST_CASE("isometry examples") {
  CellComplex c(line(), {AxisGrid({R(0)})});
  auto P = point_module(c, {R(0)});
  auto r = isometry_check(P, ArrModule::zero(c, 2), {R(1)});
  CHECK(r.equal);
  CHECK(r.lhs.value == R(0));
  CHECK(r.rhs.value == R(0));
  auto F = principal1(R(1));
  CHECK(isometry_check(F, F, {R(1)}).equal);
  CHECK(isometry_check(F, principal1(R(-2)), {R(2)}).lhs.value == R(3, 2));
}

TEST_CASE("metric axioms, monotonicity and bisection agreement on small samples") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 25; ++t) {
    auto f = t % 2 ? plane() : line();
    RandomModuleOptions opt;
    auto [F, G] = sample_related_pair(rng, f, opt);
    auto H = jiggle(rng, G);
    RatVec v = sample_direction(rng, f->cone());
    auto fg = interleaving_distance(F, G, v), gf = interleaving_distance(G, F, v), gh = interleaving_distance(G, H, v),
         fh = interleaving_distance(F, H, v);
    CHECK(same_distance(fg, gf));
    CHECK(fg.value.sign() >= 0);
    if (!fg.infinite && !gh.infinite) {
      REQUIRE_FALSE(fh.infinite);
      CHECK(fh.value <= fg.value + gh.value);
    }
    RatVec w = add(v, sample_direction(rng, f->cone()));  // w >= v in the antipodal order
    auto fgw = interleaving_distance(F, G, w);
    if (!fgw.infinite) CHECK(fgw.value <= fg.value);
    DistanceOptions bis;
    bis.mode = DistanceOptions::Mode::bisection;
    auto b = interleaving_distance(F, G, v, bis);
    CHECK(b.infinite == fg.infinite);
    if (!fg.infinite) {
      CHECK(b.lo <= fg.value);
      CHECK(fg.value <= b.hi);
      CHECK(b.hi - b.lo <= R(1, 1 << 20));
    }
  }
}

TEST_CASE("budget exhaustion is reported") {
  std::mt19937_64 rng(5);
  RandomModuleOptions opt;
  opt.max_cell_dim = 3;
  bool seen = false;
  for (int t = 0; t < 60 && !seen; ++t) {
    auto [F, G] = sample_related_pair(rng, plane(), opt);
    SearchOptions tiny;
    tiny.budget_bits = 0;
    RatVec v = sample_direction(rng, F.complex().frame().cone());
    auto d = decide_interleaving(F, G, v, tiny);
    if (d.verdict != Verdict::budget_exceeded) continue;
    seen = true;
    CHECK_THROWS_AS(is_interleaved(F, G, v, tiny), BudgetExceeded);
    DistanceOptions o;
    o.search = tiny;
    auto r = interleaving_distance(F, G, v, o);
    CHECK(r.budget_exceeded);
    CHECK(r.kind == DistanceResult::Kind::bracketed);
  }
  CHECK(seen);
}
