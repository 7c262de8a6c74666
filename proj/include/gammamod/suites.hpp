#pragma once

#include "gammamod/conv1d.hpp"
#include "gammamod/interleave.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace gammamod {

struct SuiteFailure {
  std::uint64_t seed;  // rerun with --seed <seed> --count 1
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::size_t passed = 0;
  std::vector<SuiteFailure> failures;
  bool ok() const { return failures.empty() && passed == count; }
};

const std::vector<std::string>& suite_names();
// Case i runs with seed + i. Unknown names throw DomainError.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t count);

// Generators shared by the suites.
// dim 1: (-inf,0]; dim >= 2: a signed orthant or a skewed simplicial cone.
FramePtr sample_frame(std::mt19937_64& rng, std::size_t n);
ConeSpec skewed_cone(std::size_t n);
// Random positive combination of the generators of gamma^a.
RatVec sample_direction(std::mt19937_64& rng, const ConeSpec& cone);
CellComplex sample_complex(std::mt19937_64& rng, const FramePtr& frame, std::size_t max_breakpoints = 2);
// Point modules, slabs, principals, direct sums and random modules.
ArrModule sample_mixed_module(std::mt19937_64& rng, const FramePtr& frame, std::uint32_t p = 2);
// Same cells, dims and maps with every breakpoint moved by at most 1
// (order preserved), so the distance to the input is finite.
ArrModule jiggle(std::mt19937_64& rng, const ArrModule& F);
// k on a bounded box of cells with identity maps.
ArrModule box_module(std::mt19937_64& rng, const CellComplex& cx, std::uint32_t p = 2);
// Random module and a perturbation of it at finite distance.
std::pair<ArrModule, ArrModule> sample_related_pair(std::mt19937_64& rng, const FramePtr& frame,
                                                    const RandomModuleOptions& opt);
RaySheaf sample_ray_sheaf(std::mt19937_64& rng, std::size_t max_size);
// Brute force over all bijections; infinite (nullopt) when sizes differ.
std::optional<Rat> bottleneck_distance(const RaySheaf& F, const RaySheaf& G, const Rat& unit);

}  // namespace gammamod
