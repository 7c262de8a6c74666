#include "gammamod/conv1d.hpp"
#include "gammamod/errors.hpp"
#include "gammamod/suites.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace gammamod;

namespace {

Rat R(long long n, long long d = 1) { return Rat(n, d); }

GaugeSpec gauge_line(Rat v = 1) { return GaugeSpec(ConeSpec::orthant(1, -1), {v}); }

RaySheaf rays(std::vector<Rat> b) { return RaySheaf(std::move(b)); }

}  // namespace

TEST_CASE("gauge on the line") {
  CHECK_NOTHROW(check_line_gauge(gauge_line()));
  CHECK_THROWS_AS(check_line_gauge(GaugeSpec(ConeSpec::orthant(2, -1), {R(1), R(1)})), DomainError);
  CHECK(gauge(gauge_line(2), {R(3)}) == R(3, 2));
}

TEST_CASE("ball convolution") {
  auto g = gauge_line(2);
  CHECK(convolve_ball(rays({R(0), R(5)}), R(1), g) == rays({R(-2), R(3)}));
  CHECK(convolve_ball(rays({}), R(4), g).size() == 0);
  CHECK_THROWS_AS(convolve_ball(rays({R(0)}), R(-1), g), DomainError);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 200; ++t) {
    auto F = sample_ray_sheaf(rng, 5);
    Rat a(static_cast<long long>(rng() % 7), 3), b(static_cast<long long>(rng() % 5), 2);
    CHECK(convolve_ball(convolve_ball(F, a, g), b, g) == convolve_ball(F, a + b, g));
    CHECK(convolve_ball(F, R(0), g) == F);
  }
}

TEST_CASE("gamma-fixed supports") {
  CHECK(interval_is_gamma_fixed({R(0), std::nullopt}));
  CHECK_FALSE(interval_is_gamma_fixed({R(0), R(1)}));
  auto h = antipodal_hull({R(0), R(1)});
  CHECK(h.lo == R(0));
  CHECK_FALSE(h.hi.has_value());
  CHECK(gamma_fixed_check(rays({R(0), R(3)})));
  CHECK(gamma_fixed_check(rays({})));
}

TEST_CASE("c-isomorphism examples") {
  auto g = gauge_line();
  auto A = rays({R(0)}), B = rays({R(3)});
  CHECK(is_c_isomorphic(A, B, R(3), g));
  CHECK_FALSE(is_c_isomorphic(A, B, R(2), g));
  CHECK_FALSE(is_c_isomorphic(A, rays({}), R(100), g));
  CHECK(is_c_isomorphic(rays({}), rays({}), R(0), g));
  auto s = c_isomorphic_by_search(A, B, R(3), g);
  REQUIRE(s);
  CHECK(*s);
  s = c_isomorphic_by_search(A, B, R(5, 2), g);
  REQUIRE(s);
  CHECK_FALSE(*s);
}

TEST_CASE("search agrees with sorted matching") {
  std::mt19937_64 rng(8);
  int searched = 0;
  for (int t = 0; t < 300; ++t) {
    auto F = sample_ray_sheaf(rng, 3), G = sample_ray_sheaf(rng, 3);
    auto g = gauge_line(R(1 + static_cast<long long>(rng() % 3), 1 + rng() % 2));
    Rat c(static_cast<long long>(rng() % 9), 2);
    auto s = c_isomorphic_by_search(F, G, c, g);
    if (!s) continue;
    ++searched;
    CHECK(*s == c_isomorphic_by_matching(F, G, c, g));
    if (*s) CHECK(is_c_isomorphic(F, G, c + R(1, 3), g));
  }
  CHECK(searched > 150);
}

TEST_CASE("convolution distance") {
  auto g = gauge_line();
  auto d = convolution_distance(rays({R(0), R(10)}), rays({R(1), R(10)}), g);
  CHECK_FALSE(d.infinite);
  CHECK(d.value == R(1));
  CHECK(convolution_distance(rays({R(0)}), rays({R(3)}), g).value == R(3));
  CHECK(convolution_distance(rays({R(0)}), rays({R(3)}), gauge_line(3)).value == R(1));
  CHECK(convolution_distance(rays({R(0)}), rays({}), g).infinite);
  CHECK(convolution_distance(rays({}), rays({}), g).value == R(0));

  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    auto F = sample_ray_sheaf(rng, 6), G = sample_ray_sheaf(rng, 6), H = sample_ray_sheaf(rng, 6);
    Rat u(1 + static_cast<long long>(rng() % 3), 1 + rng() % 2);
    auto gu = gauge_line(u);
    auto fg = convolution_distance(F, G, gu);
    auto bn = oracle::bottleneck(F.births(), G.births());
    CHECK(fg.infinite == !bn.has_value());
    if (bn) CHECK(fg.value == *bn / u);
    CHECK(same_distance(fg, convolution_distance(G, F, gu)));
    CHECK(convolution_distance(F, F, gu).value == R(0));
    auto gh = convolution_distance(G, H, gu), fh = convolution_distance(F, H, gu);
    if (!fg.infinite && !gh.infinite) CHECK(fh.value <= fg.value + gh.value);
  }
}

TEST_CASE("convolution and interleaving distances agree") {
  auto cmp = compare_with_interleaving(rays({R(0)}), rays({R(3)}), gauge_line());
  CHECK(cmp.equal);
  CHECK(cmp.d_int.value == R(3));
  cmp = compare_with_interleaving(rays({R(0)}), rays({R(3)}), gauge_line(3));
  CHECK(cmp.equal);
  CHECK(cmp.d_conv.value == R(1));
  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    auto F = sample_ray_sheaf(rng, 3), G = sample_ray_sheaf(rng, 3);
    auto c = compare_with_interleaving(F, G, gauge_line(R(1, 1 + rng() % 2)));
    CHECK(c.equal);
  }
}

TEST_CASE("ray gamma modules") {
  auto frame = make_frame(ConeSpec::orthant(1, -1));
  auto M = ray_gamma_module(rays({R(0), R(2)}), frame);
  CHECK(M.module().dim_at({R(-1)}) == 0);
  CHECK(M.module().dim_at({R(1)}) == 1);
  CHECK(M.module().dim_at({R(5)}) == 2);
  CHECK_FALSE(validate(M.module()));
}

TEST_CASE("properness") {
  auto cone = ConeSpec::orthant(1, -1);
  auto r = properness_report(rays({R(0)}), cone);
  CHECK_FALSE(r.literal);
  CHECK(r.mirrored);
  r = properness_report(rays({}), cone);
  CHECK(r.literal);
  CHECK(r.mirrored);
  r = properness_report(std::vector<ClosedInterval>{{R(0), R(1)}}, cone);
  CHECK(r.literal);
  CHECK(r.mirrored);
}
