#include "gammamod/diagram.hpp"
#include "gammamod/errors.hpp"
#include "gammamod/field.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace gammamod;

namespace {

FieldMat M(std::uint32_t p, std::vector<std::vector<long long>> rows, std::size_t cols = 0) {
  return FieldMat::from_rows(p, rows, cols);
}

FieldMat random_mat(std::mt19937_64& rng, std::uint32_t p, std::size_t r, std::size_t c) {
  FieldMat m(p, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, static_cast<long long>(rng() % p));
  return m;
}

// Random functorial diagram on a few small poset shapes; retries until coherent.
Diagram random_diagram(std::mt19937_64& rng, std::size_t max_dim = 2) {
  static const std::vector<std::vector<std::pair<std::size_t, std::size_t>>> shapes{
      {},                                // discrete
      {{0, 1}, {1, 2}, {2, 3}},          // chain
      {{0, 1}, {0, 2}, {1, 3}, {2, 3}},  // diamond
      {{0, 2}, {1, 2}, {1, 3}},          // zigzag
      {{0, 1}, {0, 2}, {0, 3}},          // initial node
      {{0, 3}, {1, 3}, {2, 3}},          // terminal node
  };
  const auto& sh = shapes[rng() % shapes.size()];
  while (true) {
    std::vector<std::size_t> dims;
    for (int i = 0; i < 4; ++i) dims.push_back(rng() % (max_dim + 1));
    std::vector<Diagram::Arrow> arrows;
    for (auto [a, b] : sh) arrows.push_back({a, b, random_mat(rng, 2, dims[b], dims[a])});
    try {
      return Diagram(2, dims, arrows);
    } catch (const InvariantError&) {
    }
  }
}

}  // namespace

TEST_CASE("rref, rank and kernel examples") {
  auto I = FieldMat::identity(2, 3);
  CHECK(rref(I).reduced == I);
  CHECK(rank(I) == 3);
  FieldMat Z(2, 2, 2);
  CHECK(rank(Z) == 0);
  CHECK(rref(Z).reduced.is_zero());
  auto r = rref(M(2, {{1, 1}, {1, 1}}));
  CHECK(r.reduced == M(2, {{1, 1}, {0, 0}}));
  CHECK(r.rank() == 1);
  CHECK(kernel_basis(I).cols() == 0);
  CHECK(kernel_basis(Z).cols() == 2);
  auto k = kernel_basis(M(2, {{1, 1}}));
  REQUIRE(k.cols() == 1);
  CHECK(k == M(2, {{1}, {1}}));
}

TEST_CASE("solve examples") {
  auto I = FieldMat::identity(2, 2);
  auto x = solve(I, {1, 0});
  REQUIRE(x);
  CHECK(*x == FieldVec{1, 0});
  CHECK_FALSE(solve(FieldMat(2, 2, 2), {1, 0}));
  auto y = solve(M(2, {{1, 1}}), {1});
  REQUIRE(y);
  CHECK((*y == FieldVec{1, 0} || *y == FieldVec{0, 1}));
}

TEST_CASE("rank-nullity and solve on random matrices over several primes") {
  std::mt19937_64 rng(3);
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 65521u}) {
    for (int t = 0; t < 60; ++t) {
      std::size_t r = rng() % 5, c = rng() % 5;
      FieldMat m = random_mat(rng, p, r, c);
      FieldMat k = kernel_basis(m);
      CHECK(rank(m) + k.cols() == c);
      CHECK((m * k).is_zero());
      CHECK(rank(k) == k.cols());
      FieldVec x(c);
      for (auto& e : x) e = static_cast<Residue>(rng() % p);
      auto b = m.apply(x);
      auto s = solve(m, b);
      REQUIRE(s);
      CHECK(m.apply(*s) == b);
      FieldMat q = cokernel_projection(m);
      CHECK((q * m).is_zero());
      CHECK(q.rows() == r - rank(m));
      if (p == 2) CHECK(oracle::rank2(oracle::to_mat2(m)) == rank(m));
    }
  }
}

TEST_CASE("inverse modulo p") {
  for (std::uint32_t p : {2u, 3u, 65521u})
    for (Residue a = 1; a < std::min<std::uint32_t>(p, 50); ++a) CHECK((static_cast<std::uint64_t>(a) * field_inv(a, p)) % p == 1);
}

TEST_CASE("limits: small examples") {
  Diagram discrete(2, {1, 2}, {});
  CHECK(limit(discrete).dim == 3);
  CHECK(colimit(discrete).dim == 3);
  // initial object a with a zero arrow to b
  Diagram chain(2, {1, 1}, {{0, 1, M(2, {{0}})}});
  auto L = limit(chain);
  CHECK(L.dim == 1);
  CHECK(L.projections[0].is_identity());
  auto C = colimit(chain);
  CHECK(C.dim == 1);
  // incoherent diamond is rejected
  CHECK_THROWS_AS(Diagram(2, {1, 1, 1, 1},
                          {{0, 1, M(2, {{1}})}, {0, 2, M(2, {{1}})}, {1, 3, M(2, {{1}})}, {2, 3, M(2, {{0}})}}),
                  InvariantError);
  // cycles are rejected
  CHECK_THROWS(Diagram(2, {1, 1}, {{0, 1, M(2, {{1}})}, {1, 0, M(2, {{1}})}}));
}

TEST_CASE("limits and colimits agree with brute force over F_2") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 300; ++t) {
    Diagram d = random_diagram(rng);
    auto L = limit(d);
    auto C = colimit(d);
    CHECK(L.dim == oracle::brute_limit_dim(d));
    CHECK(C.dim == oracle::brute_colimit_dim(d));
    for (const auto& a : d.arrows()) {
      CHECK(a.map * L.projections[a.src] == L.projections[a.dst]);
      CHECK(C.injections[a.dst] * a.map == C.injections[a.src]);
    }
    // projections are jointly injective, injections jointly surjective
    FieldMat P(2, 0, L.dim), Q(2, C.dim, 0);
    for (std::size_t i = 0; i < d.size(); ++i) {
      P = vstack(P, L.projections[i]);
      Q = hstack(Q, C.injections[i]);
    }
    CHECK(rank(P) == L.dim);
    CHECK(rank(Q) == C.dim);
  }
}

TEST_CASE("initial and terminal nodes") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::size_t> dims;
    for (int i = 0; i < 4; ++i) dims.push_back(rng() % 3);
    std::vector<Diagram::Arrow> in, out;
    for (std::size_t b = 1; b < 4; ++b) in.push_back({0, b, random_mat(rng, 2, dims[b], dims[0])});
    for (std::size_t a = 0; a < 3; ++a) out.push_back({a, 3, random_mat(rng, 2, dims[3], dims[a])});
    auto L = limit(Diagram(2, dims, in));
    CHECK(L.dim == dims[0]);
    CHECK(rank(L.projections[0]) == dims[0]);
    auto C = colimit(Diagram(2, dims, out));
    CHECK(C.dim == dims[3]);
    CHECK(rank(C.injections[3]) == dims[3]);
  }
}

TEST_CASE("affine solution spaces") {
  LinearSystem free(2);
  free.add_unknown(1, 1);
  auto s = affine_solution_space(free);
  REQUIRE(s.particular);
  CHECK(s.basis.cols() == 1);

  LinearSystem zero(2);
  auto x = zero.add_unknown(1, 1);
  zero.add_equation({{x, FieldMat::identity(2, 1), FieldMat::identity(2, 1)}}, FieldMat(2, 1, 1));
  auto z = affine_solution_space(zero);
  REQUIRE(z.particular);
  CHECK(z.basis.cols() == 0);
  CHECK(*z.particular == FieldVec{0});

  LinearSystem bad(2);
  auto y = bad.add_unknown(1, 1);
  bad.add_equation({{y, FieldMat(2, 1, 1), FieldMat::identity(2, 1)}}, FieldMat::identity(2, 1));
  CHECK_FALSE(affine_solution_space(bad).particular);

  // naturality for a 2-point chain k -1-> k into itself: X_lo * 1 = 1 * X_hi
  LinearSystem chain(2);
  auto hi = chain.add_unknown(1, 1), lo = chain.add_unknown(1, 1);
  auto one = FieldMat::identity(2, 1);
  chain.add_equation({{lo, one, one}, {hi, one, one}}, FieldMat(2, 1, 1));
  auto c = affine_solution_space(chain);
  REQUIRE(c.particular);
  CHECK(c.basis.cols() == 1);  // hand count: X_lo = X_hi over F_2
}
