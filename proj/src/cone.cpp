#include "gammamod/cone.hpp"

#include "gammamod/errors.hpp"

#include <boost/integer/common_factor.hpp>

#include <functional>

namespace gammamod {

namespace {

using Int = boost::multiprecision::cpp_int;

void check_dim(const RatVec& x, std::size_t n, const char* what) {
  if (x.size() != n) throw DimensionError(std::string(what) + ": dimension mismatch");
}

void for_each_subset(std::size_t m, std::size_t k,
                     const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      fn(idx);
      return;
    }
    for (std::size_t i = start; i + (k - pos) <= m; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

bool satisfies(const RatMat& normals, const RatVec& x) {
  for (const auto& xi : normals)
    if (dot(xi, x).sign() < 0) return false;
  return true;
}

// Extreme rays of the pointed cone {x : <row, x> >= 0}, as primitive vectors.
RatMat extreme_rays(const RatMat& rows, std::size_t n) {
  RatMat rays;
  for_each_subset(rows.size(), n - 1, [&](const std::vector<std::size_t>& s) {
    RatMat sub;
    for (auto i : s) sub.push_back(rows[i]);
    auto ns = null_space(sub, n);
    if (ns.size() != 1) return;
    for (int sgn : {1, -1}) {
      RatVec r = primitive(scale(Rat(sgn), ns[0]));
      if (!satisfies(rows, r)) continue;
      bool seen = false;
      for (const auto& q : rays) seen = seen || q == r;
      if (!seen) rays.push_back(r);
    }
  });
  return rays;
}

}  // namespace

RatVec primitive(const RatVec& v) {
  Int l = 1;
  for (const auto& r : v) l = boost::integer::lcm(l, Int(boost::multiprecision::denominator(r.impl())));
  std::vector<Int> ints;
  Int g = 0;
  for (const auto& r : v) {
    Int n = boost::multiprecision::numerator(r.impl()) * (l / boost::multiprecision::denominator(r.impl()));
    ints.push_back(n);
    g = boost::integer::gcd(g, n < 0 ? Int(-n) : n);
  }
  if (g == 0) return v;
  RatVec out;
  for (const auto& n : ints) out.emplace_back(Rat::Impl(n / g));
  return out;
}

ConeSpec::ConeSpec(RatMat normals, RatMat generators) {
  if (normals.empty()) throw InvariantError("cone needs at least one normal");
  dim_ = normals[0].size();
  if (dim_ == 0) throw InvariantError("cone dimension must be positive");
  for (const auto& xi : normals) {
    check_dim(xi, dim_, "cone normal");
    if (is_zero(xi)) throw InvariantError("zero facet normal");
  }
  RatMat gens;
  for (auto& g : generators) {
    check_dim(g, dim_, "cone generator");
    if (is_zero(g)) continue;
    if (!satisfies(normals, g)) throw InvariantError("generator " + to_string(g) + " violates a normal");
    gens.push_back(std::move(g));
  }
  if (rank(normals) != dim_) throw InvariantError("cone is not proper (normals do not span)");

  RatMat rays = extreme_rays(normals, dim_);
  for (const auto& r : rays) {
    const RatVec* hit = nullptr;
    for (const auto& g : gens)
      if (primitive(g) == r) {
        hit = &g;
        break;
      }
    if (!hit) throw InvariantError("normals and generators describe different cones: ray " + to_string(r) + " missing");
    generators_.push_back(*hit);
  }
  interior_ = zeros(dim_);
  for (const auto& g : generators_) interior_ = add(interior_, g);
  for (const auto& xi : normals)
    if (dot(xi, interior_).sign() <= 0) throw InvariantError("cone has empty interior");

  for (const auto& xi : normals) {
    RatMat on_face;
    for (const auto& r : rays)
      if (dot(xi, r).is_zero()) on_face.push_back(r);
    if (rank(on_face) + 1 != dim_) continue;
    RatVec p = primitive(xi);
    bool dup = false;
    for (const auto& q : normals_) dup = dup || primitive(q) == p;
    if (!dup) normals_.push_back(xi);
  }
}

ConeSpec ConeSpec::from_normals(const RatMat& normals) {
  if (normals.empty()) throw InvariantError("cone needs at least one normal");
  return ConeSpec(normals, extreme_rays(normals, normals[0].size()));
}

ConeSpec ConeSpec::from_generators(const RatMat& generators) {
  if (generators.empty()) throw InvariantError("cone needs at least one generator");
  return ConeSpec(extreme_rays(generators, generators[0].size()), generators);
}

ConeSpec ConeSpec::orthant(std::size_t n, int sign) {
  RatMat m = identity_rat(n);
  if (sign < 0)
    for (auto& row : m) row = neg(row);
  return ConeSpec(m, m);
}

bool contains(const ConeSpec& cone, const RatVec& x) {
  check_dim(x, cone.dim(), "contains");
  return satisfies(cone.normals(), x);
}

bool interior_contains(const ConeSpec& cone, const RatVec& x) {
  check_dim(x, cone.dim(), "interior_contains");
  for (const auto& xi : cone.normals())
    if (dot(xi, x).sign() <= 0) return false;
  return true;
}

ConeSpec antipode(const ConeSpec& cone) {
  RatMat n, g;
  for (const auto& xi : cone.normals()) n.push_back(neg(xi));
  for (const auto& v : cone.generators()) g.push_back(neg(v));
  return ConeSpec(n, g);
}

ConeSpec polar(const ConeSpec& cone) { return ConeSpec(cone.generators(), cone.normals()); }

bool leq(const ConeSpec& cone, const RatVec& x, const RatVec& y) {
  check_dim(x, cone.dim(), "leq");
  check_dim(y, cone.dim(), "leq");
  return contains(cone, sub(x, y));
}

bool same_cone(const ConeSpec& a, const ConeSpec& b) {
  if (a.dim() != b.dim()) return false;
  for (const auto& g : a.generators())
    if (!contains(b, g)) return false;
  for (const auto& g : b.generators())
    if (!contains(a, g)) return false;
  return true;
}

GaugeSpec::GaugeSpec(ConeSpec cone, RatVec v) : cone_(std::move(cone)), v_(std::move(v)) {
  check_dim(v_, cone_.dim(), "gauge direction");
  for (const auto& xi : cone_.normals())
    if (dot(xi, v_).sign() >= 0) throw DomainError("gauge direction " + to_string(v_) + " is not interior to the antipodal cone");
}

Rat gauge(const GaugeSpec& g, const RatVec& x) {
  check_dim(x, g.cone().dim(), "gauge");
  Rat best;
  for (const auto& xi : g.cone().normals()) {
    Rat q = dot(xi, x).abs() / dot(xi, g.v()).abs();
    if (q > best) best = q;
  }
  return best;
}

bool ball_membership(const GaugeSpec& g, const Rat& r, const RatVec& x) {
  if (r.sign() < 0) throw DomainError("ball radius must be non-negative");
  check_dim(x, g.cone().dim(), "ball_membership");
  // x in (r v + gamma) cap (-r v + gamma^a)
  RatVec rv = scale(r, g.v());
  return contains(g.cone(), sub(x, rv)) && contains(g.cone(), sub(neg(x), rv));
}

MapCompatibility linear_map_compatible(const RatMat& M, const ConeSpec& src, const ConeSpec& dst) {
  if (M.size() != dst.dim()) throw DimensionError("linear map: row count must equal target dimension");
  for (const auto& row : M)
    if (row.size() != src.dim()) throw DimensionError("linear map: column count must equal source dimension");
  MapCompatibility r;
  r.maps_cone = true;
  for (const auto& g : src.generators())
    if (!contains(dst, mat_vec(M, g))) r.maps_cone = false;
  r.maps_interior = r.maps_cone && interior_contains(dst, mat_vec(M, src.interior_point()));
  return r;
}

namespace {

// Row means coeffs . x <= rhs.
struct Ineq {
  RatVec coeffs;
  Rat rhs;
};

// Fourier-Motzkin feasibility of a system of linear inequalities.
bool feasible(std::vector<Ineq> sys, std::size_t vars) {
  for (std::size_t v = 0; v < vars; ++v) {
    std::vector<Ineq> pos, negs, rest;
    for (auto& q : sys) {
      int s = q.coeffs[v].sign();
      (s > 0 ? pos : s < 0 ? negs : rest).push_back(std::move(q));
    }
    for (const auto& p : pos)
      for (const auto& m : negs) {
        Rat a = p.coeffs[v], b = -m.coeffs[v];
        Ineq c{add(scale(b, p.coeffs), scale(a, m.coeffs)), b * p.rhs + a * m.rhs};
        rest.push_back(std::move(c));
      }
    sys = std::move(rest);
  }
  for (const auto& q : sys)
    if (q.rhs.sign() < 0) return false;
  return true;
}

}  // namespace

bool is_gamma_proper(const ConeSpec& cone, const PolySet& A) {
  const std::size_t n = cone.dim();
  if (A.vertices.empty()) throw InvariantError("polyhedral set needs a vertex");
  for (const auto& v : A.vertices) check_dim(v, n, "is_gamma_proper");
  for (const auto& r : A.recession) check_dim(r, n, "is_gamma_proper");
  const std::size_t k = A.recession.size();
  if (k == 0) return true;
  // u = -sum lambda_k r_k, lambda >= 0, u in gamma, normalized by w.u = 1
  // where w = sum of normals is strictly positive on gamma minus 0.
  RatVec w = zeros(n);
  for (const auto& xi : cone.normals()) w = add(w, xi);
  std::vector<Ineq> sys;
  for (std::size_t j = 0; j < k; ++j) {
    RatVec c(k);
    c[j] = -1;
    sys.push_back({c, 0});
  }
  for (const auto& xi : cone.normals()) {
    RatVec c(k);
    for (std::size_t j = 0; j < k; ++j) c[j] = dot(xi, A.recession[j]);
    sys.push_back({c, 0});
  }
  RatVec c(k);
  for (std::size_t j = 0; j < k; ++j) c[j] = -dot(w, A.recession[j]);
  sys.push_back({c, 1});
  sys.push_back({neg(c), -1});
  return !feasible(std::move(sys), k);
}

}  // namespace gammamod
