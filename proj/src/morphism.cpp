#include "gammamod/errors.hpp"
#include "gammamod/module.hpp"

namespace gammamod {

ModMorphism::ModMorphism(ArrModule src, ArrModule dst, std::vector<FieldMat> comps)
    : src_(std::move(src)), dst_(std::move(dst)), comps_(std::move(comps)) {
  if (!(src_.complex() == dst_.complex())) throw DomainError("morphism endpoints live on different complexes");
  if (src_.prime() != dst_.prime()) throw DomainError("morphism endpoints use different fields");
  if (comps_.size() != src_.complex().num_cells()) throw DimensionError("morphism needs one component per cell");
  for (CellId c = 0; c < comps_.size(); ++c)
    if (comps_[c].rows() != dst_.dim(c) || comps_[c].cols() != src_.dim(c) || comps_[c].prime() != src_.prime())
      throw DimensionError("morphism component at cell " + std::to_string(c) + " has the wrong shape");
}

ModMorphism ModMorphism::identity(const ArrModule& F) {
  std::vector<FieldMat> c;
  for (CellId x = 0; x < F.complex().num_cells(); ++x) c.push_back(FieldMat::identity(F.prime(), F.dim(x)));
  return ModMorphism(F, F, std::move(c));
}

ModMorphism ModMorphism::zero(const ArrModule& src, const ArrModule& dst) {
  std::vector<FieldMat> c;
  for (CellId x = 0; x < src.complex().num_cells(); ++x) c.emplace_back(src.prime(), dst.dim(x), src.dim(x));
  return ModMorphism(src, dst, std::move(c));
}

std::optional<std::string> check_naturality(const ModMorphism& f) {
  const auto& cx = f.src().complex();
  for (CellId c = 0; c < cx.num_cells(); ++c)
    for (std::size_t i = 0; i < cx.dim(); ++i) {
      auto lo = cx.down(c, i);
      if (!lo) continue;
      if (!(f.component(*lo) * f.src().down_map(c, i) == f.dst().down_map(c, i) * f.component(c))) {
        std::string s = "naturality fails on the cover below cell [";
        auto idx = cx.index(c);
        for (std::size_t k = 0; k < idx.size(); ++k) s += (k ? "," : "") + std::to_string(idx[k]);
        return s + "] along axis " + std::to_string(i);
      }
    }
  return std::nullopt;
}

ModMorphism compose(const ModMorphism& g, const ModMorphism& f) {
  if (!(f.dst() == g.src())) throw DomainError("compose: target of the first morphism is not the source of the second");
  std::vector<FieldMat> c;
  for (CellId x = 0; x < f.components().size(); ++x) c.push_back(g.component(x) * f.component(x));
  return ModMorphism(f.src(), g.dst(), std::move(c));
}

bool morphism_equal(const ModMorphism& f, const ModMorphism& g) {
  return f.src() == g.src() && f.dst() == g.dst() && f.components() == g.components();
}

bool is_zero_morphism(const ModMorphism& f) {
  for (const auto& m : f.components())
    if (!m.is_zero()) return false;
  return true;
}

ModMorphism pullback_morphism(const ModMorphism& f, const CellComplex& target, const std::vector<CellId>& to_source) {
  std::vector<FieldMat> c;
  for (CellId x = 0; x < target.num_cells(); ++x) c.push_back(f.component(to_source[x]));
  return ModMorphism(pullback(f.src(), target, to_source), pullback(f.dst(), target, to_source), std::move(c));
}

ModMorphism refine_morphism(const ModMorphism& f, const CellComplex& fine) {
  return pullback_morphism(f, fine, cell_map(fine, f.src().complex()));
}

ModMorphism smoothing(const ArrModule& F, const RatVec& v, const RatVec& w) {
  const auto& frame = F.complex().frame();
  if (!leq(frame.cone(), w, v)) throw DomainError("smoothing needs w <= v in the cone order");
  CellComplex sv = shift_complex(F.complex(), v), sw = shift_complex(F.complex(), w);
  CellComplex r = merge_complexes({&sv, &sw});
  ArrModule src = refine(shift(F, v), r), dst = refine(shift(F, w), r);
  RatVec vg = frame.to_grid(v), wg = frame.to_grid(w);
  std::vector<FieldMat> comps;
  for (CellId c = 0; c < r.num_cells(); ++c) {
    RatVec y = r.representative_grid(c);
    CellId hi = F.complex().cell_of_grid(add(y, vg));
    CellId lo = F.complex().cell_of_grid(add(y, wg));
    comps.push_back(F.map_between(hi, lo));
  }
  return ModMorphism(std::move(src), std::move(dst), std::move(comps));
}

namespace {

// Induced structure maps on a family of subspaces given by basis matrices.
std::vector<std::vector<FieldMat>> induced_sub_maps(const ArrModule& ambient, const std::vector<FieldMat>& bases) {
  const auto& cx = ambient.complex();
  std::vector<std::vector<FieldMat>> maps(cx.num_cells(), std::vector<FieldMat>(cx.dim()));
  for (CellId c = 0; c < cx.num_cells(); ++c)
    for (std::size_t i = 0; i < cx.dim(); ++i) {
      auto lo = cx.down(c, i);
      if (!lo) continue;
      auto m = solve_matrix(bases[*lo], ambient.down_map(c, i) * bases[c]);
      if (!m) throw InvariantError("subspace family is not preserved by the structure maps");
      maps[c][i] = std::move(*m);
    }
  return maps;
}

std::vector<std::size_t> col_dims(const std::vector<FieldMat>& bases) {
  std::vector<std::size_t> d;
  for (const auto& b : bases) d.push_back(b.cols());
  return d;
}

}  // namespace

SubModule pointwise_kernel(const ModMorphism& f) {
  std::vector<FieldMat> bases;
  for (const auto& m : f.components()) bases.push_back(kernel_basis(m));
  ArrModule k(f.src().complex(), f.src().prime(), col_dims(bases), induced_sub_maps(f.src(), bases));
  return {k, ModMorphism(k, f.src(), bases)};
}

ImageFactorization pointwise_image(const ModMorphism& f) {
  std::vector<FieldMat> bases, core;
  for (const auto& m : f.components()) {
    bases.push_back(image_basis(m));
    core.push_back(*solve_matrix(bases.back(), m));
  }
  ArrModule im(f.dst().complex(), f.dst().prime(), col_dims(bases), induced_sub_maps(f.dst(), bases));
  return {im, ModMorphism(f.src(), im, std::move(core)), ModMorphism(im, f.dst(), bases)};
}

QuotientModule pointwise_cokernel(const ModMorphism& f) {
  const auto& cx = f.dst().complex();
  std::vector<FieldMat> proj;
  std::vector<std::size_t> dims;
  for (const auto& m : f.components()) {
    proj.push_back(cokernel_projection(m));
    dims.push_back(proj.back().rows());
  }
  std::vector<std::vector<FieldMat>> maps(cx.num_cells(), std::vector<FieldMat>(cx.dim()));
  for (CellId c = 0; c < cx.num_cells(); ++c)
    for (std::size_t i = 0; i < cx.dim(); ++i) {
      auto lo = cx.down(c, i);
      if (!lo) continue;
      // M Q_c = Q_lo T
      auto mt = solve_matrix(proj[c].transpose(), (proj[*lo] * f.dst().down_map(c, i)).transpose());
      if (!mt) throw InvariantError("cokernel maps are not induced; morphism is not natural");
      maps[c][i] = mt->transpose();
    }
  ArrModule q(cx, f.dst().prime(), std::move(dims), std::move(maps));
  return {q, ModMorphism(f.dst(), q, std::move(proj))};
}

HomSpace natural_hom_space(const ArrModule& src, const ArrModule& dst) {
  if (!(src.complex() == dst.complex())) throw DomainError("hom space: modules live on different complexes");
  const auto& cx = src.complex();
  const auto p = src.prime();
  LinearSystem sys(p);
  for (CellId c = 0; c < cx.num_cells(); ++c) sys.add_unknown(dst.dim(c), src.dim(c));
  for (CellId c = 0; c < cx.num_cells(); ++c)
    for (std::size_t i = 0; i < cx.dim(); ++i) {
      auto lo = cx.down(c, i);
      if (!lo) continue;
      if (dst.dim(*lo) == 0 || src.dim(c) == 0) continue;
      // f_lo S - T f_c = 0
      sys.add_equation({{*lo, FieldMat::identity(p, dst.dim(*lo)), src.down_map(c, i)},
                        {c, dst.down_map(c, i).scaled(p - 1), FieldMat::identity(p, src.dim(c))}},
                       FieldMat(p, dst.dim(*lo), src.dim(c)));
    }
  auto space = affine_solution_space(sys);
  return {std::move(sys), std::move(space.basis)};
}

}  // namespace gammamod
