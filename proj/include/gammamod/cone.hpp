#pragma once

#include "gammamod/rational.hpp"

#include <cstddef>

namespace gammamod {

// Closed proper polyhedral cone with nonempty interior, held in double
// description: gamma = {x : <xi, x> >= 0 for every normal xi} = cone(generators).
// The constructor validates that both descriptions agree and drops
// redundant normals and non-extreme generators.
class ConeSpec {
 public:
  ConeSpec(RatMat normals, RatMat generators);

  static ConeSpec from_normals(const RatMat& normals);
  static ConeSpec from_generators(const RatMat& generators);
  // sign = +1 gives [0,inf)^n, sign = -1 gives (-inf,0]^n.
  static ConeSpec orthant(std::size_t n, int sign);

  std::size_t dim() const { return dim_; }
  const RatMat& normals() const { return normals_; }
  const RatMat& generators() const { return generators_; }
  // Sum of the extreme generators; strictly interior.
  const RatVec& interior_point() const { return interior_; }

 private:
  std::size_t dim_ = 0;
  RatMat normals_;
  RatMat generators_;
  RatVec interior_;
};

bool contains(const ConeSpec& cone, const RatVec& x);
bool interior_contains(const ConeSpec& cone, const RatVec& x);
ConeSpec antipode(const ConeSpec& cone);
ConeSpec polar(const ConeSpec& cone);
// x <=_gamma y, i.e. x - y in gamma.
bool leq(const ConeSpec& cone, const RatVec& x, const RatVec& y);
// Same point set (mutual containment of generators).
bool same_cone(const ConeSpec& a, const ConeSpec& b);

// Scales a nonzero vector to the primitive integer vector on the same ray.
RatVec primitive(const RatVec& v);

// Gauge data: the ball B_v = (v + gamma) cap (-v + gamma^a) for v in Int(gamma^a).
class GaugeSpec {
 public:
  GaugeSpec(ConeSpec cone, RatVec v);
  const ConeSpec& cone() const { return cone_; }
  const RatVec& v() const { return v_; }

 private:
  ConeSpec cone_;
  RatVec v_;
};

Rat gauge(const GaugeSpec& g, const RatVec& x);
bool ball_membership(const GaugeSpec& g, const Rat& r, const RatVec& x);

struct MapCompatibility {
  bool maps_cone = false;
  bool maps_interior = false;
};

// M has shape dst.dim x src.dim.
MapCompatibility linear_map_compatible(const RatMat& M, const ConeSpec& src, const ConeSpec& dst);

// conv(vertices) + cone(recession).
struct PolySet {
  RatMat vertices;
  RatMat recession;
};

// gamma cap (-rec A) == {0}.
bool is_gamma_proper(const ConeSpec& cone, const PolySet& A);

}  // namespace gammamod
