#pragma once

#include "gammamod/arrangement.hpp"
#include "gammamod/diagram.hpp"
#include "gammamod/field.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace gammamod {

// Persistence module presented on a cell arrangement: a space per cell and a
// structure map for every cover pair, running from the larger cell to the
// smaller one (restriction direction).
class ArrModule {
 public:
  // down_maps[c][axis] is the map c -> complex.down(c, axis), of shape
  // dim(down) x dim(c); entries for missing neighbours are ignored.
  ArrModule(CellComplex complex, std::uint32_t p, std::vector<std::size_t> dims,
            std::vector<std::vector<FieldMat>> down_maps);
  static ArrModule zero(const CellComplex& complex, std::uint32_t p);

  const CellComplex& complex() const { return complex_; }
  std::uint32_t prime() const { return p_; }
  std::size_t dim(CellId c) const { return dims_[c]; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  const FieldMat& down_map(CellId c, std::size_t axis) const { return maps_[c][axis]; }
  // Structure map hi -> lo; requires lo <= hi in cell order.
  FieldMat map_between(CellId hi, CellId lo) const;

  std::size_t dim_at(const RatVec& x) const { return dims_[complex_.cell_of(x)]; }
  FieldMat map_at(const RatVec& hi, const RatVec& lo) const;
  std::size_t total_dim() const;
  bool is_zero() const;

  friend bool operator==(const ArrModule& a, const ArrModule& b);

 private:
  CellComplex complex_;
  std::uint32_t p_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<FieldMat>> maps_;
};

struct SquareViolation {
  CellIndex cell;  // top corner
  std::size_t axis_a, axis_b;
  std::string describe() const;
};

std::optional<SquareViolation> validate(const ArrModule& F);

// Indicator module of x + gamma. The complex is refined to contain x.
ArrModule principal_module(const CellComplex& c, const RatVec& x, std::uint32_t p = 2);
// k on the single point cell {x}; x must be a vertex of the arrangement.
ArrModule point_module(const CellComplex& c, const RatVec& x, std::uint32_t p = 2);
ArrModule direct_sum(const ArrModule& F, const ArrModule& G);
// Value at x of the result is the value of F at x + v.
ArrModule shift(const ArrModule& F, const RatVec& v);
// Restriction along a monotone map from the cells of `target` to the cells of F.
ArrModule pullback(const ArrModule& F, const CellComplex& target, const std::vector<CellId>& to_source);
ArrModule refine(const ArrModule& F, const CellComplex& fine);
// Equality after refining both sides to their common refinement.
bool equal_after_refinement(const ArrModule& F, const ArrModule& G);

class ModMorphism {
 public:
  // Both modules must share the same complex; comps[c] is dst.dim(c) x src.dim(c).
  ModMorphism(ArrModule src, ArrModule dst, std::vector<FieldMat> comps);
  static ModMorphism identity(const ArrModule& F);
  static ModMorphism zero(const ArrModule& src, const ArrModule& dst);

  const ArrModule& src() const { return src_; }
  const ArrModule& dst() const { return dst_; }
  const FieldMat& component(CellId c) const { return comps_[c]; }
  const std::vector<FieldMat>& components() const { return comps_; }

 private:
  ArrModule src_, dst_;
  std::vector<FieldMat> comps_;
};

// Names the first cover pair where naturality fails.
std::optional<std::string> check_naturality(const ModMorphism& f);
// g after f.
ModMorphism compose(const ModMorphism& g, const ModMorphism& f);
bool morphism_equal(const ModMorphism& f, const ModMorphism& g);
bool is_zero_morphism(const ModMorphism& f);
ModMorphism refine_morphism(const ModMorphism& f, const CellComplex& fine);
ModMorphism pullback_morphism(const ModMorphism& f, const CellComplex& target, const std::vector<CellId>& to_source);

// chi_{v,w}: shift(F,v) -> shift(F,w), for w <=_gamma v, on the common
// refinement of the two shifted complexes.
ModMorphism smoothing(const ArrModule& F, const RatVec& v, const RatVec& w);

struct SubModule {
  ArrModule module;
  ModMorphism inclusion;  // module -> ambient
};

struct QuotientModule {
  ArrModule module;
  ModMorphism projection;  // ambient -> module
};

struct ImageFactorization {
  ArrModule module;
  ModMorphism corestriction;  // src -> image
  ModMorphism inclusion;      // image -> dst
};

SubModule pointwise_kernel(const ModMorphism& f);
QuotientModule pointwise_cokernel(const ModMorphism& f);
ImageFactorization pointwise_image(const ModMorphism& f);

struct RandomModuleOptions {
  std::uint32_t prime = 2;
  std::size_t max_breakpoints = 2;  // per axis
  std::size_t max_cell_dim = 2;
  int coordinate_range = 4;         // breakpoints drawn from [-range, range]
  unsigned zero_weight = 1;         // extra weight of dimension 0 when sampling dims
};

// Deterministic per (seed, frame, options). Maps are sampled cell by cell
// from the solution space of the square constraints, so every output is functorial.
ArrModule random_module(std::uint64_t seed, const FramePtr& frame, const RandomModuleOptions& opt = {});
// Same, on a given complex.
ArrModule random_module_on(std::mt19937_64& rng, const CellComplex& c, const RandomModuleOptions& opt);
// All natural transformations src -> dst (same complex): one unknown per
// cell, basis columns span the solutions.
struct HomSpace {
  LinearSystem system;
  FieldMat basis;
};
HomSpace natural_hom_space(const ArrModule& src, const ArrModule& dst);

ModMorphism random_morphism(std::mt19937_64& rng, const ArrModule& src, const ArrModule& dst);
std::size_t draw(std::mt19937_64& rng, std::size_t n);

}  // namespace gammamod
