#pragma once

#include "gammamod/conv1d.hpp"
#include "gammamod/diagram.hpp"
#include "gammamod/interleave.hpp"

#include <cstdint>
#include <optional>
#include <vector>

// Test-side reference implementations. They use their own F_2 arithmetic and
// exhaustive enumeration; only module evaluation is shared with the library.
namespace oracle {

using Bits = std::vector<std::uint8_t>;
using Mat2 = std::vector<Bits>;  // rows of 0/1

Mat2 to_mat2(const gammamod::FieldMat& m);
// a is r x inner, b is inner x cols; the shapes cannot be read off empty row lists.
Mat2 mul2(const Mat2& a, const Mat2& b, std::size_t inner, std::size_t cols);
std::size_t rank2(Mat2 rows);
// Basis of {x : rows x = 0}.
std::vector<Bits> nullspace2(const Mat2& rows, std::size_t n);

// Dimension of the space of compatible families, by enumerating every tuple.
std::size_t brute_limit_dim(const gammamod::Diagram& d);
// Total dimension minus the rank of the relation span, by enumerating the span.
std::size_t brute_colimit_dim(const gammamod::Diagram& d);

struct ExhaustiveResult {
  bool interleaved = false;
  std::size_t f_dim = 0, g_dim = 0;  // hom space dimensions found by the oracle
  bool skipped = false;              // enumeration too large
};
// Enumerates every pair of natural maps f : F(. + v) -> G, g : G(. + v) -> F.
ExhaustiveResult exhaustive_interleaving(const gammamod::ArrModule& F, const gammamod::ArrModule& G,
                                         const gammamod::RatVec& v, std::size_t max_bits = 18);

// inf{r : x in r (v + gamma) cap r (-v + gamma^a)} bracketed to width tol,
// membership decided straight from the normals.
std::pair<gammamod::Rat, gammamod::Rat> bisection_gauge(const gammamod::RatMat& normals, const gammamod::RatVec& v,
                                                        const gammamod::RatVec& x, const gammamod::Rat& tol);

std::optional<gammamod::Rat> bottleneck(const std::vector<gammamod::Rat>& a, const std::vector<gammamod::Rat>& b);

// Within 1-D: every map between cells holding points s < t is zero.
bool strict_maps_vanish(const gammamod::ArrModule& F);

// Cells of the complex meeting x + Int(gamma) (side interior) or
// x + Int(gamma^a) (antipodal side), with x the representative of cell a.
std::vector<gammamod::CellId> cells_meeting(const gammamod::CellComplex& cx, gammamod::CellId a, gammamod::Side side);

}  // namespace oracle
