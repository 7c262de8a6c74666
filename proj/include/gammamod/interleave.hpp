#pragma once

#include "gammamod/errors.hpp"
#include "gammamod/module.hpp"
#include "gammamod/sites.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gammamod {

// f : shift(F,v) -> G and g : shift(G,v) -> F, given by one matrix per cell
// of `grid`, a common refinement of F, G, F - v and G - v.
struct InterleavingWitness {
  CellComplex grid;
  RatVec shift;
  std::vector<FieldMat> f;
  std::vector<FieldMat> g;
};

struct SearchOptions {
  unsigned budget_bits = 20;  // at most 2^budget_bits search nodes per decision
};

struct BudgetExceeded : Error {
  using Error::Error;
};

enum class Verdict { interleaved, not_interleaved, budget_exceeded };

struct Decision {
  Verdict verdict = Verdict::not_interleaved;
  std::optional<InterleavingWitness> witness;
  std::uint64_t nodes = 0;
};

Decision decide_interleaving(const ArrModule& F, const ArrModule& G, const RatVec& v, const SearchOptions& opt = {});
// Throws BudgetExceeded instead of returning that verdict.
std::optional<InterleavingWitness> is_interleaved(const ArrModule& F, const ArrModule& G, const RatVec& v,
                                                  const SearchOptions& opt = {});
std::optional<InterleavingWitness> is_interleaved(const GammaModule& F, const GammaModule& G, const RatVec& v,
                                                  const SearchOptions& opt = {});

// Independent check of a witness; returns a description of the first failure.
std::optional<std::string> verify_witness(const ArrModule& F, const ArrModule& G, const InterleavingWitness& w);

// The witness as module morphisms on its grid.
ModMorphism witness_f(const ArrModule& F, const ArrModule& G, const InterleavingWitness& w);
ModMorphism witness_g(const ArrModule& F, const ArrModule& G, const InterleavingWitness& w);

enum class WitnessFunctor { beta_star, beta_inv, alpha_star };
// Image of a witness under a functor, pulled back cellwise.
InterleavingWitness map_witness(const InterleavingWitness& w, WitnessFunctor fn);

struct DistanceOptions {
  enum class Mode { exact, bisection } mode = Mode::exact;
  Rat tolerance = Rat(1, 1 << 20);
  SearchOptions search;
};

struct DistanceResult {
  enum class Kind { exact, bracketed } kind = Kind::exact;
  bool infinite = false;
  Rat value;           // meaningful when !infinite
  bool attained = false;
  Rat lo, hi;          // bracket, hi meaningful when !hi_infinite
  bool hi_infinite = false;
  bool budget_exceeded = false;
  std::optional<InterleavingWitness> witness;
  std::uint64_t decisions = 0;
};

DistanceResult interleaving_distance(const ArrModule& F, const ArrModule& G, const RatVec& v0,
                                     const DistanceOptions& opt = {});
// Candidate scales where the decision can change, sorted, starting with 0.
std::vector<Rat> candidate_scales(const ArrModule& F, const ArrModule& G, const RatVec& v0);
bool same_distance(const DistanceResult& a, const DistanceResult& b);
std::string distance_string(const DistanceResult& d);

std::vector<bool> inter_probe(const ArrModule& F, const ArrModule& G, const std::vector<RatVec>& samples,
                              const SearchOptions& opt = {});

struct IsometryReport {
  DistanceResult lhs, rhs;
  bool equal = false;
};

IsometryReport isometry_check(const ArrModule& F, const ArrModule& G, const RatVec& v0, const DistanceOptions& opt = {});

// chi_{2v,0} of F is the zero morphism.
bool zero_interleaving_criterion(const ArrModule& F, const RatVec& v);

}  // namespace gammamod
