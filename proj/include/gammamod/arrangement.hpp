#pragma once

#include "gammamod/cone.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

namespace gammamod {

// A simplicial cone together with a rational change of coordinates
// y = T x under which the cone becomes the signed orthant
// {y : signs[i] * y_i >= 0}. Cell arrangements live in y-coordinates.
class ConeFrame {
 public:
  // Picks the identity when the cone is already a signed orthant,
  // otherwise the rows of T are the facet normals.
  explicit ConeFrame(const ConeSpec& cone);
  ConeFrame(const ConeSpec& cone, const RatMat& transform);

  const ConeSpec& cone() const { return cone_; }
  std::size_t dim() const { return cone_.dim(); }
  const RatMat& transform() const { return t_; }
  const RatMat& inverse_transform() const { return tinv_; }
  int sign(std::size_t axis) const { return signs_[axis]; }
  bool is_identity() const { return identity_; }

  RatVec to_grid(const RatVec& x) const;
  RatVec from_grid(const RatVec& y) const;

  friend bool operator==(const ConeFrame& a, const ConeFrame& b);

 private:
  void init(const RatMat& transform);
  ConeSpec cone_;
  RatMat t_, tinv_;
  std::vector<int> signs_;
  bool identity_ = false;
};

using FramePtr = std::shared_ptr<const ConeFrame>;

FramePtr make_frame(const ConeSpec& cone);

enum class Side { interior, antipodal_interior };

// Cells along one axis: index 2j+1 is the point {b_j}; even indices are the
// open intervals between, with 0 and 2k the unbounded ends.
class AxisGrid {
 public:
  AxisGrid() = default;
  explicit AxisGrid(std::vector<Rat> breakpoints);

  const std::vector<Rat>& breakpoints() const { return b_; }
  std::size_t num_cells() const { return 2 * b_.size() + 1; }
  std::size_t locate(const Rat& y) const;
  Rat representative(std::size_t idx) const;
  static bool is_point(std::size_t idx) { return idx % 2 == 1; }

  friend bool operator==(const AxisGrid& a, const AxisGrid& b) { return a.b_ == b.b_; }

 private:
  std::vector<Rat> b_;
};

using CellId = std::size_t;
using CellIndex = std::vector<std::size_t>;

class CellComplex {
 public:
  CellComplex(FramePtr frame, std::vector<AxisGrid> axes);
  // Arrangement with no breakpoints.
  explicit CellComplex(FramePtr frame);

  const ConeFrame& frame() const { return *frame_; }
  const FramePtr& frame_ptr() const { return frame_; }
  std::size_t dim() const { return axes_.size(); }
  const AxisGrid& axis(std::size_t i) const { return axes_[i]; }
  const std::vector<AxisGrid>& axes() const { return axes_; }
  std::size_t num_cells() const { return total_; }

  CellIndex index(CellId c) const;
  CellId id(const CellIndex& idx) const;
  std::size_t axis_index(CellId c, std::size_t axis) const { return (c / stride_[axis]) % axes_[axis].num_cells(); }
  bool is_point(CellId c, std::size_t axis) const { return AxisGrid::is_point(axis_index(c, axis)); }
  bool is_fully_open(CellId c) const;
  bool is_fully_point(CellId c) const;

  CellId cell_of(const RatVec& x) const;  // ambient coordinates
  CellId cell_of_grid(const RatVec& y) const;
  RatVec representative(CellId c) const;  // ambient coordinates
  RatVec representative_grid(CellId c) const;

  bool cell_leq(CellId a, CellId b) const;
  // Step along one axis toward the gamma-smaller / gamma-larger neighbour.
  std::optional<CellId> down(CellId c, std::size_t axis) const;
  std::optional<CellId> up(CellId c, std::size_t axis) const;
  CellId just_inside(CellId c, Side side) const;
  // Axis direction (+1 / -1 in index) that goes down in the cone order.
  int down_step(std::size_t axis) const { return frame_->sign(axis) < 0 ? -1 : 1; }

  friend bool operator==(const CellComplex& a, const CellComplex& b);

 private:
  FramePtr frame_;
  std::vector<AxisGrid> axes_;
  std::vector<std::size_t> stride_;
  std::size_t total_ = 1;
};

struct Refinement {
  CellComplex complex;
  std::vector<CellId> to_first;   // refined cell -> cell of the first input
  std::vector<CellId> to_second;  // refined cell -> cell of the second input
};

Refinement common_refinement(const CellComplex& a, const CellComplex& b);
// Union of breakpoints of several complexes.
CellComplex merge_complexes(const std::vector<const CellComplex*>& cs);
// Map each cell of `fine` to the cell of `coarse` containing it.
std::vector<CellId> cell_map(const CellComplex& fine, const CellComplex& coarse);
// Breakpoints translated by -v (v in ambient coordinates).
CellComplex shift_complex(const CellComplex& c, const RatVec& v);
// Adds the grid coordinates of x as breakpoints.
CellComplex refine_with_point(const CellComplex& c, const RatVec& x);
bool is_refinement_of(const CellComplex& fine, const CellComplex& coarse);

}  // namespace gammamod
