#include "gammamod/arrangement.hpp"

#include "gammamod/errors.hpp"

#include <algorithm>

namespace gammamod {

ConeFrame::ConeFrame(const ConeSpec& cone) : cone_(cone) {
  if (cone_.normals().size() != cone_.dim())
    throw DomainError("module calculus needs a simplicial cone (" + std::to_string(cone_.normals().size()) +
                      " facets in dimension " + std::to_string(cone_.dim()) + ")");
  try {
    init(identity_rat(cone_.dim()));
  } catch (const DomainError&) {
    init(cone_.normals());
  }
}

ConeFrame::ConeFrame(const ConeSpec& cone, const RatMat& transform) : cone_(cone) {
  if (cone_.normals().size() != cone_.dim()) throw DomainError("module calculus needs a simplicial cone");
  init(transform);
}

void ConeFrame::init(const RatMat& transform) {
  const std::size_t n = cone_.dim();
  if (transform.size() != n) throw DimensionError("transform must be square of the cone dimension");
  for (const auto& row : transform)
    if (row.size() != n) throw DimensionError("transform must be square of the cone dimension");
  t_ = transform;
  tinv_ = inverse(t_);
  signs_.assign(n, 0);
  // xi . x = (xi T^{-1}) . y must be a signed coordinate covector.
  for (const auto& xi : cone_.normals()) {
    RatVec row(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) row[j] += xi[k] * tinv_[k][j];
    std::size_t nz = n, count = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (!row[j].is_zero()) {
        nz = j;
        ++count;
      }
    if (count != 1 || signs_[nz] != 0) throw DomainError("transform does not carry the cone to a signed orthant");
    signs_[nz] = row[nz].sign();
  }
  identity_ = t_ == identity_rat(n);
}

RatVec ConeFrame::to_grid(const RatVec& x) const {
  if (x.size() != dim()) throw DimensionError("point dimension does not match the cone");
  return identity_ ? x : mat_vec(t_, x);
}

RatVec ConeFrame::from_grid(const RatVec& y) const {
  if (y.size() != dim()) throw DimensionError("point dimension does not match the cone");
  return identity_ ? y : mat_vec(tinv_, y);
}

bool operator==(const ConeFrame& a, const ConeFrame& b) {
  return a.t_ == b.t_ && a.signs_ == b.signs_ && same_cone(a.cone_, b.cone_);
}

FramePtr make_frame(const ConeSpec& cone) { return std::make_shared<const ConeFrame>(cone); }

AxisGrid::AxisGrid(std::vector<Rat> breakpoints) : b_(std::move(breakpoints)) {
  for (std::size_t i = 1; i < b_.size(); ++i)
    if (!(b_[i - 1] < b_[i])) throw InvariantError("axis breakpoints must be strictly increasing");
}

std::size_t AxisGrid::locate(const Rat& y) const {
  auto it = std::lower_bound(b_.begin(), b_.end(), y);
  std::size_t j = static_cast<std::size_t>(it - b_.begin());
  if (it != b_.end() && *it == y) return 2 * j + 1;
  return 2 * j;
}

Rat AxisGrid::representative(std::size_t idx) const {
  const std::size_t k = b_.size();
  if (k == 0) return Rat(0);
  if (idx % 2 == 1) return b_[idx / 2];
  std::size_t j = idx / 2;
  if (j == 0) return b_[0] - 1;
  if (j == k) return b_[k - 1] + 1;
  return (b_[j - 1] + b_[j]) / Rat(2);
}

CellComplex::CellComplex(FramePtr frame, std::vector<AxisGrid> axes) : frame_(std::move(frame)), axes_(std::move(axes)) {
  if (axes_.size() != frame_->dim()) throw DimensionError("complex needs one axis per dimension");
  stride_.assign(axes_.size(), 1);
  total_ = 1;
  for (std::size_t i = axes_.size(); i-- > 0;) {
    stride_[i] = total_;
    total_ *= axes_[i].num_cells();
  }
}

CellComplex::CellComplex(FramePtr frame) : CellComplex(frame, std::vector<AxisGrid>(frame->dim())) {}

CellIndex CellComplex::index(CellId c) const {
  CellIndex idx(axes_.size());
  for (std::size_t i = 0; i < axes_.size(); ++i) idx[i] = axis_index(c, i);
  return idx;
}

CellId CellComplex::id(const CellIndex& idx) const {
  if (idx.size() != axes_.size()) throw DimensionError("cell index has wrong length");
  CellId c = 0;
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (idx[i] >= axes_[i].num_cells()) throw DimensionError("cell index out of range");
    c += idx[i] * stride_[i];
  }
  return c;
}

bool CellComplex::is_fully_open(CellId c) const {
  for (std::size_t i = 0; i < axes_.size(); ++i)
    if (is_point(c, i)) return false;
  return true;
}

bool CellComplex::is_fully_point(CellId c) const {
  for (std::size_t i = 0; i < axes_.size(); ++i)
    if (!is_point(c, i)) return false;
  return true;
}

CellId CellComplex::cell_of(const RatVec& x) const { return cell_of_grid(frame_->to_grid(x)); }

CellId CellComplex::cell_of_grid(const RatVec& y) const {
  if (y.size() != axes_.size()) throw DimensionError("point dimension does not match the complex");
  CellId c = 0;
  for (std::size_t i = 0; i < axes_.size(); ++i) c += axes_[i].locate(y[i]) * stride_[i];
  return c;
}

RatVec CellComplex::representative_grid(CellId c) const {
  RatVec y(axes_.size());
  for (std::size_t i = 0; i < axes_.size(); ++i) y[i] = axes_[i].representative(axis_index(c, i));
  return y;
}

RatVec CellComplex::representative(CellId c) const { return frame_->from_grid(representative_grid(c)); }

bool CellComplex::cell_leq(CellId a, CellId b) const {
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    auto ia = axis_index(a, i), ib = axis_index(b, i);
    if (down_step(i) < 0 ? ia > ib : ia < ib) return false;
  }
  return true;
}

std::optional<CellId> CellComplex::down(CellId c, std::size_t axis) const {
  auto i = axis_index(c, axis);
  if (down_step(axis) < 0) {
    if (i == 0) return std::nullopt;
    return c - stride_[axis];
  }
  if (i + 1 == axes_[axis].num_cells()) return std::nullopt;
  return c + stride_[axis];
}

std::optional<CellId> CellComplex::up(CellId c, std::size_t axis) const {
  auto i = axis_index(c, axis);
  if (down_step(axis) > 0) {
    if (i == 0) return std::nullopt;
    return c - stride_[axis];
  }
  if (i + 1 == axes_[axis].num_cells()) return std::nullopt;
  return c + stride_[axis];
}

CellId CellComplex::just_inside(CellId c, Side side) const {
  CellId r = c;
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (!is_point(c, i)) continue;
    bool go_down = side == Side::interior;
    // point cells always have both neighbours
    r = go_down == (down_step(i) < 0) ? r - stride_[i] : r + stride_[i];
  }
  return r;
}

bool operator==(const CellComplex& a, const CellComplex& b) {
  return a.axes_ == b.axes_ && (a.frame_ == b.frame_ || *a.frame_ == *b.frame_);
}

namespace {

void require_same_frame(const CellComplex& a, const CellComplex& b) {
  if (a.frame_ptr() != b.frame_ptr() && !(a.frame() == b.frame()))
    throw DomainError("complexes carry different cones or coordinate frames");
}

}  // namespace

CellComplex merge_complexes(const std::vector<const CellComplex*>& cs) {
  if (cs.empty()) throw DimensionError("merge of no complexes");
  const std::size_t n = cs[0]->dim();
  std::vector<AxisGrid> axes;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rat> b;
    for (const auto* c : cs) {
      require_same_frame(*cs[0], *c);
      const auto& bp = c->axis(i).breakpoints();
      b.insert(b.end(), bp.begin(), bp.end());
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    axes.emplace_back(std::move(b));
  }
  return CellComplex(cs[0]->frame_ptr(), std::move(axes));
}

std::vector<CellId> cell_map(const CellComplex& fine, const CellComplex& coarse) {
  require_same_frame(fine, coarse);
  const std::size_t n = fine.dim();
  std::vector<std::vector<std::size_t>> per_axis(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < fine.axis(i).num_cells(); ++k)
      per_axis[i].push_back(coarse.axis(i).locate(fine.axis(i).representative(k)));
  std::vector<CellId> out(fine.num_cells());
  CellIndex idx(n);
  for (CellId c = 0; c < fine.num_cells(); ++c) {
    for (std::size_t i = 0; i < n; ++i) idx[i] = per_axis[i][fine.axis_index(c, i)];
    out[c] = coarse.id(idx);
  }
  return out;
}

Refinement common_refinement(const CellComplex& a, const CellComplex& b) {
  CellComplex r = merge_complexes({&a, &b});
  auto m1 = cell_map(r, a);
  auto m2 = cell_map(r, b);
  return {std::move(r), std::move(m1), std::move(m2)};
}

CellComplex shift_complex(const CellComplex& c, const RatVec& v) {
  RatVec vg = c.frame().to_grid(v);
  std::vector<AxisGrid> axes;
  for (std::size_t i = 0; i < c.dim(); ++i) {
    std::vector<Rat> b;
    for (const auto& x : c.axis(i).breakpoints()) b.push_back(x - vg[i]);
    axes.emplace_back(std::move(b));
  }
  return CellComplex(c.frame_ptr(), std::move(axes));
}

CellComplex refine_with_point(const CellComplex& c, const RatVec& x) {
  RatVec y = c.frame().to_grid(x);
  std::vector<AxisGrid> axes;
  for (std::size_t i = 0; i < c.dim(); ++i) {
    std::vector<Rat> b = c.axis(i).breakpoints();
    if (!std::binary_search(b.begin(), b.end(), y[i])) {
      b.push_back(y[i]);
      std::sort(b.begin(), b.end());
    }
    axes.emplace_back(std::move(b));
  }
  return CellComplex(c.frame_ptr(), std::move(axes));
}

bool is_refinement_of(const CellComplex& fine, const CellComplex& coarse) {
  if (fine.dim() != coarse.dim()) return false;
  for (std::size_t i = 0; i < fine.dim(); ++i)
    for (const auto& b : coarse.axis(i).breakpoints())
      if (!std::binary_search(fine.axis(i).breakpoints().begin(), fine.axis(i).breakpoints().end(), b)) return false;
  return true;
}

}  // namespace gammamod
