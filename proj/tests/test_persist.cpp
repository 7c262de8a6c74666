#include "gammamod/errors.hpp"
#include "gammamod/module.hpp"
#include "gammamod/suites.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace gammamod;

namespace {

Rat R(long long n, long long d = 1) { return Rat(n, d); }

FramePtr line() { return make_frame(ConeSpec::orthant(1, -1)); }
FramePtr plane() { return make_frame(ConeSpec::orthant(2, -1)); }

ArrModule random_mod(std::uint64_t seed, const FramePtr& f, std::size_t max_dim = 2) {
  RandomModuleOptions opt;
  opt.max_cell_dim = max_dim;
  return random_module(seed, f, opt);
}

std::vector<FramePtr> frames() {
  return {line(), plane(), make_frame(ConeSpec::orthant(2, 1)), make_frame(skewed_cone(2))};
}

}  // namespace

TEST_CASE("principal modules") {
  CellComplex c(line(), {AxisGrid({R(0)})});
  auto P = principal_module(c, {R(0)});
  CHECK_FALSE(validate(P));
  CHECK(P.dim_at({R(-3)}) == 1);
  CHECK(P.dim_at({R(0)}) == 1);
  CHECK(P.dim_at({R(1, 2)}) == 0);
  CHECK(P.map_at({R(0)}, {R(-1)}).is_identity());
  auto Q = principal_module(CellComplex(line()), {R(3, 2)});
  CHECK(Q.complex().axis(0).breakpoints() == std::vector<Rat>{R(3, 2)});
  CellComplex c2(plane(), {AxisGrid({R(0)}), AxisGrid({R(0)})});
  auto P2 = principal_module(c2, {R(0), R(0)});
  CHECK_FALSE(validate(P2));
  for (CellId k = 0; k < c2.num_cells(); ++k) {
    RatVec x = c2.representative(k);
    CHECK(P2.dim(k) == (x[0] <= R(0) && x[1] <= R(0) ? 1u : 0u));
  }
}

TEST_CASE("point modules") {
  CellComplex c(line(), {AxisGrid({R(0), R(1)})});
  auto P = point_module(c, {R(0)});
  CHECK(P.total_dim() == 1);
  CHECK(P.dim_at({R(0)}) == 1);
  CHECK_FALSE(validate(P));
  CHECK_THROWS_AS(point_module(c, {R(1, 2)}), DomainError);
  auto S = direct_sum(P, point_module(c, {R(1)}));
  CHECK(S.total_dim() == 2);
  CHECK_FALSE(validate(S));
}

TEST_CASE("validate names a broken square") {
  CellComplex c(plane(), {AxisGrid({R(0)}), AxisGrid({R(0)})});
  std::vector<std::size_t> dims(c.num_cells(), 1);
  std::vector<std::vector<FieldMat>> maps(c.num_cells(), std::vector<FieldMat>(2));
  for (CellId k = 0; k < c.num_cells(); ++k)
    for (std::size_t i = 0; i < 2; ++i)
      if (c.down(k, i)) maps[k][i] = FieldMat::identity(2, 1);
  CellId top = c.id({2, 2});
  maps[top][0] = FieldMat(2, 1, 1);
  ArrModule F(c, 2, dims, maps);
  auto v = validate(F);
  REQUIRE(v);
  CHECK(v->cell == CellIndex{2, 2});
  CHECK(v->describe().find("[2,2]") != std::string::npos);
  CHECK_FALSE(validate(ArrModule::zero(c, 2)));
  // wrong shapes are rejected at construction
  maps[top][0] = FieldMat(2, 2, 1);
  CHECK_THROWS_AS(ArrModule(c, 2, dims, maps), DimensionError);
}

TEST_CASE("random modules are functorial, bounded and deterministic") {
  for (const auto& f : frames())
    for (std::uint64_t s = 0; s < 250; ++s) {
      auto F = random_mod(s, f, 3);
      CHECK_FALSE(validate(F));
      for (auto d : F.dims()) CHECK(d <= 3);
      CHECK(F == random_mod(s, f, 3));
    }
}

TEST_CASE("direct sums") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    auto F = random_mod(s, plane()), G = random_mod(s + 1000, plane());
    auto Z = ArrModule::zero(F.complex(), 2);
    CHECK(direct_sum(F, Z) == F);
    auto S = direct_sum(F, G);
    CHECK_FALSE(validate(S));
    for (CellId c = 0; c < S.complex().num_cells(); ++c) {
      RatVec x = S.complex().representative(c);
      CHECK(S.dim(c) == F.dim_at(x) + G.dim_at(x));
    }
  }
  CellComplex c(line());
  CHECK_THROWS_AS(direct_sum(ArrModule::zero(c, 2), ArrModule::zero(c, 3)), DomainError);
}

TEST_CASE("shifts") {
  CellComplex c(line(), {AxisGrid({R(0)})});
  auto P = principal_module(c, {R(0)});
  CHECK(shift(P, {R(0)}) == P);
  auto S = shift(P, {R(1)});
  auto Q = principal_module(CellComplex(line()), {R(-1)});
  CHECK(equal_after_refinement(S, Q));
  for (std::uint64_t s = 0; s < 40; ++s) {
    auto F = random_mod(s, plane());
    RatVec v{R(static_cast<long long>(s % 5) - 2, 2), R(1, 3)}, w{R(-1), R(static_cast<long long>(s % 3))};
    auto A = shift(shift(F, v), w), B = shift(F, add(v, w));
    CHECK(equal_after_refinement(A, B));
    CHECK_FALSE(validate(A));
    for (int t = 0; t < 10; ++t) {
      RatVec x{R(t - 5, 2), R(3 - t, 3)};
      CHECK(shift(F, v).dim_at(x) == F.dim_at(add(x, v)));
    }
  }
}

TEST_CASE("smoothing morphisms") {
  for (const auto& f : frames())
    for (std::uint64_t s = 0; s < 30; ++s) {
      auto F = random_mod(s, f);
      std::mt19937_64 rng(s);
      RatVec w = sample_direction(rng, f->cone()), d = sample_direction(rng, f->cone());
      RatVec v = add(w, d), u = add(v, sample_direction(rng, f->cone()));
      // v = w + (point of gamma^a), so w <= v in the cone order
      auto chi = smoothing(F, v, w);
      CHECK_FALSE(check_naturality(chi));
      CHECK(morphism_equal(smoothing(F, v, v), ModMorphism::identity(shift(F, v))));
      CHECK_THROWS_AS(smoothing(F, w, v), DomainError);
      // chi_{v,w} after chi_{u,v} equals chi_{u,w}
      auto a = smoothing(F, u, v), b = smoothing(F, v, w), c = smoothing(F, u, w);
      auto fine = merge_complexes({&a.src().complex(), &b.src().complex(), &c.src().complex()});
      auto comp = compose(refine_morphism(b, fine), refine_morphism(a, fine));
      CHECK(morphism_equal(comp, refine_morphism(c, fine)));
    }
  // chi_{2v,0} vanishes on a point module
  CellComplex c(plane(), {AxisGrid({R(0)}), AxisGrid({R(1)})});
  auto P = point_module(c, {R(0), R(1)});
  CHECK(is_zero_morphism(smoothing(P, {R(2), R(2)}, {R(0), R(0)})));
}

TEST_CASE("composition laws") {
  std::mt19937_64 rng(8);
  for (std::uint64_t s = 0; s < 30; ++s) {
    auto cx = sample_complex(rng, plane());
    RandomModuleOptions opt;
    auto A = random_module_on(rng, cx, opt), B = random_module_on(rng, cx, opt), C = random_module_on(rng, cx, opt),
         D = random_module_on(rng, cx, opt);
    auto f = random_morphism(rng, A, B), g = random_morphism(rng, B, C), h = random_morphism(rng, C, D);
    CHECK_FALSE(check_naturality(f));
    CHECK(morphism_equal(compose(ModMorphism::identity(B), f), f));
    CHECK(is_zero_morphism(compose(g, ModMorphism::zero(A, B))));
    CHECK(morphism_equal(compose(h, compose(g, f)), compose(compose(h, g), f)));
  }
}

TEST_CASE("pointwise kernels and cokernels") {
  std::mt19937_64 rng(12);
  for (std::uint64_t s = 0; s < 60; ++s) {
    auto cx = sample_complex(rng, s % 2 ? plane() : line());
    RandomModuleOptions opt;
    opt.max_cell_dim = 3;
    auto F = random_module_on(rng, cx, opt), G = random_module_on(rng, cx, opt);
    CHECK(pointwise_kernel(ModMorphism::identity(F)).module.is_zero());
    auto q = pointwise_cokernel(ModMorphism::zero(ArrModule::zero(cx, 2), G));
    CHECK(q.module.dims() == G.dims());
    auto f = random_morphism(rng, F, G);
    auto k = pointwise_kernel(f);
    auto im = pointwise_image(f);
    auto co = pointwise_cokernel(f);
    CHECK_FALSE(validate(k.module));
    CHECK_FALSE(validate(co.module));
    CHECK_FALSE(check_naturality(k.inclusion));
    CHECK_FALSE(check_naturality(co.projection));
    CHECK(is_zero_morphism(compose(f, k.inclusion)));
    CHECK(is_zero_morphism(compose(co.projection, f)));
    CHECK(morphism_equal(compose(im.inclusion, im.corestriction), f));
    for (CellId c = 0; c < cx.num_cells(); ++c) {
      auto m = oracle::to_mat2(f.component(c));
      std::size_t nul = oracle::nullspace2(m, F.dim(c)).size();
      CHECK(k.module.dim(c) == nul);
      CHECK(co.module.dim(c) == G.dim(c) - (F.dim(c) - nul));
    }
  }
}

TEST_CASE("hom spaces match the oracle count") {
  for (std::uint64_t s = 0; s < 60; ++s) {
    auto F = random_mod(s, s % 2 ? plane() : line()), G = random_mod(s + 77, s % 2 ? plane() : line());
    auto fine = merge_complexes({&F.complex(), &G.complex()});
    auto Fr = refine(F, fine), Gr = refine(G, fine);
    auto hom = natural_hom_space(Fr, Gr);
    auto ex = oracle::exhaustive_interleaving(F, G, zeros(F.complex().dim()), 0);
    CHECK(hom.basis.cols() == ex.f_dim);
  }
}
