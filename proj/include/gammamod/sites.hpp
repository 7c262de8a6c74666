#pragma once

#include "gammamod/module.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gammamod {

enum class PieceKind { closed, interior };

// Finite union of principal pieces x + gamma (closed) or x + Int(gamma)
// (interior). Stored as an antichain: no piece lies inside another.
class OpenSet {
 public:
  struct Piece {
    RatVec point;
    PieceKind kind;
  };

  explicit OpenSet(FramePtr frame) : frame_(std::move(frame)) {}
  OpenSet(FramePtr frame, std::vector<Piece> pieces);
  static OpenSet principal(FramePtr frame, RatVec x, PieceKind kind);

  const ConeFrame& frame() const { return *frame_; }
  const FramePtr& frame_ptr() const { return frame_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  bool contains_point(const RatVec& x) const;

 private:
  FramePtr frame_;
  std::vector<Piece> pieces_;
};

bool piece_contains(const ConeSpec& cone, const OpenSet::Piece& outer, const OpenSet::Piece& inner);
// V is a subset of U.
bool open_contains(const OpenSet& U, const OpenSet& V);
bool open_equal(const OpenSet& U, const OpenSet& V);
OpenSet open_union(const OpenSet& U, const OpenSet& V);
// Both inputs must use one piece kind.
OpenSet open_intersection(const OpenSet& U, const OpenSet& V);
OpenSet alpha_t(const OpenSet& U);
OpenSet beta_t(const OpenSet& U);

// Module satisfying the continuity invariant: the structure map from every
// cell a to just_inside(a, interior) is an isomorphism.
class GammaModule {
 public:
  explicit GammaModule(ArrModule m);
  const ArrModule& module() const { return m_; }
  // Isomorphic copy in which those maps are identities.
  GammaModule normalized() const;
  bool is_normalized() const;

  friend bool operator==(const GammaModule& a, const GammaModule& b) { return a.m_ == b.m_; }

 private:
  ArrModule m_;
};

// First cell where the continuity invariant fails.
std::optional<CellId> continuity_violation(const ArrModule& F);

GammaModule beta_star(const ArrModule& F);
ArrModule beta_inv(const GammaModule& G);
ArrModule alpha_star(const GammaModule& G);

ModMorphism beta_star(const ModMorphism& f);
ModMorphism beta_inv_morphism(const ModMorphism& f);
ModMorphism alpha_star_morphism(const ModMorphism& f);

bool vanishes_on_open_cells(const ArrModule& F);
bool is_ephemeral(const ArrModule& F);

struct ExactnessReport {
  bool exact = true;
  std::string detail;
};

// beta_star applied to 0 -> ker f -> src -> im f -> 0, checked cellwise.
ExactnessReport exactness_probe(const ModMorphism& f);

}  // namespace gammamod
