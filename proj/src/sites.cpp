#include "gammamod/sites.hpp"

#include "gammamod/errors.hpp"

namespace gammamod {

namespace {

bool in_interior(const ConeSpec& cone, const RatVec& x) { return interior_contains(cone, x); }

std::vector<OpenSet::Piece> prune(const ConeSpec& cone, std::vector<OpenSet::Piece> pieces) {
  std::vector<OpenSet::Piece> out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < pieces.size() && !redundant; ++j) {
      if (i == j || !piece_contains(cone, pieces[j], pieces[i])) continue;
      // equal pieces: keep the first
      redundant = !piece_contains(cone, pieces[i], pieces[j]) || j < i;
    }
    if (!redundant) out.push_back(pieces[i]);
  }
  return out;
}

PieceKind uniform_kind(const OpenSet& U, const char* what) {
  if (U.empty()) return PieceKind::closed;
  PieceKind k = U.pieces()[0].kind;
  for (const auto& p : U.pieces())
    if (p.kind != k) throw DomainError(std::string(what) + ": open set mixes closed and interior pieces");
  return k;
}

}  // namespace

OpenSet::OpenSet(FramePtr frame, std::vector<Piece> pieces) : frame_(std::move(frame)) {
  for (const auto& p : pieces)
    if (p.point.size() != frame_->dim()) throw DimensionError("open set generator has the wrong dimension");
  pieces_ = prune(frame_->cone(), std::move(pieces));
}

OpenSet OpenSet::principal(FramePtr frame, RatVec x, PieceKind kind) {
  return OpenSet(std::move(frame), {{std::move(x), kind}});
}

bool OpenSet::contains_point(const RatVec& x) const {
  for (const auto& p : pieces_) {
    RatVec d = sub(x, p.point);
    if (p.kind == PieceKind::closed ? contains(frame_->cone(), d) : in_interior(frame_->cone(), d)) return true;
  }
  return false;
}

bool piece_contains(const ConeSpec& cone, const OpenSet::Piece& outer, const OpenSet::Piece& inner) {
  RatVec d = sub(inner.point, outer.point);
  if (inner.kind == PieceKind::closed && outer.kind == PieceKind::interior) return in_interior(cone, d);
  return contains(cone, d);
}

bool open_contains(const OpenSet& U, const OpenSet& V) {
  for (const auto& q : V.pieces()) {
    bool inside = false;
    for (const auto& p : U.pieces()) inside = inside || piece_contains(U.frame().cone(), p, q);
    if (!inside) return false;
  }
  return true;
}

bool open_equal(const OpenSet& U, const OpenSet& V) { return open_contains(U, V) && open_contains(V, U); }

OpenSet open_union(const OpenSet& U, const OpenSet& V) {
  auto pieces = U.pieces();
  pieces.insert(pieces.end(), V.pieces().begin(), V.pieces().end());
  return OpenSet(U.frame_ptr(), std::move(pieces));
}

OpenSet open_intersection(const OpenSet& U, const OpenSet& V) {
  if (U.empty() || V.empty()) return OpenSet(U.frame_ptr());
  PieceKind k = uniform_kind(U, "intersection");
  if (uniform_kind(V, "intersection") != k) throw DomainError("intersection: open sets use different piece kinds");
  const auto& f = U.frame();
  std::vector<OpenSet::Piece> pieces;
  for (const auto& a : U.pieces())
    for (const auto& b : V.pieces()) {
      RatVec ya = f.to_grid(a.point), yb = f.to_grid(b.point), m(ya.size());
      // per axis meet in the signed orthant order
      for (std::size_t i = 0; i < m.size(); ++i)
        m[i] = f.sign(i) > 0 ? std::max(ya[i], yb[i]) : std::min(ya[i], yb[i]);
      pieces.push_back({f.from_grid(m), k});
    }
  return OpenSet(U.frame_ptr(), std::move(pieces));
}

OpenSet alpha_t(const OpenSet& U) {
  uniform_kind(U, "alpha_t");
  std::vector<OpenSet::Piece> pieces;
  for (const auto& p : U.pieces()) pieces.push_back({p.point, PieceKind::interior});
  return OpenSet(U.frame_ptr(), std::move(pieces));
}

OpenSet beta_t(const OpenSet& U) {
  if (!U.empty() && uniform_kind(U, "beta_t") != PieceKind::interior)
    throw DomainError("beta_t: needs interior pieces");
  return U;
}

std::optional<CellId> continuity_violation(const ArrModule& F) {
  const auto& cx = F.complex();
  for (CellId a = 0; a < cx.num_cells(); ++a) {
    CellId b = cx.just_inside(a, Side::interior);
    if (a == b) continue;
    if (F.dim(a) != F.dim(b)) return a;
    if (rank(F.map_between(a, b)) != F.dim(a)) return a;
  }
  return std::nullopt;
}

namespace {

std::vector<CellId> side_map(const CellComplex& cx, Side s) {
  std::vector<CellId> m(cx.num_cells());
  for (CellId c = 0; c < m.size(); ++c) m[c] = cx.just_inside(c, s);
  return m;
}

}  // namespace

GammaModule::GammaModule(ArrModule m) : m_(std::move(m)) {
  if (auto v = validate(m_)) throw InvariantError(v->describe());
  if (auto c = continuity_violation(m_)) {
    auto idx = m_.complex().index(*c);
    std::string s = "not a gamma-module: map from cell [";
    for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
    throw InvariantError(s + "] to its interior neighbour is not invertible");
  }
}

GammaModule GammaModule::normalized() const {
  const auto& cx = m_.complex();
  return GammaModule(pullback(m_, cx, side_map(cx, Side::interior)));
}

bool GammaModule::is_normalized() const { return normalized().m_ == m_; }

GammaModule beta_star(const ArrModule& F) {
  const auto& cx = F.complex();
  return GammaModule(pullback(F, cx, side_map(cx, Side::interior)));
}

ArrModule beta_inv(const GammaModule& G) {
  const auto& cx = G.module().complex();
  return pullback(G.module(), cx, side_map(cx, Side::antipodal_interior));
}

ArrModule alpha_star(const GammaModule& G) {
  const auto& cx = G.module().complex();
  return pullback(G.module(), cx, side_map(cx, Side::interior));
}

ModMorphism beta_star(const ModMorphism& f) {
  const auto& cx = f.src().complex();
  return pullback_morphism(f, cx, side_map(cx, Side::interior));
}

ModMorphism beta_inv_morphism(const ModMorphism& f) {
  const auto& cx = f.src().complex();
  return pullback_morphism(f, cx, side_map(cx, Side::antipodal_interior));
}

ModMorphism alpha_star_morphism(const ModMorphism& f) { return beta_star(f); }

bool vanishes_on_open_cells(const ArrModule& F) {
  const auto& cx = F.complex();
  for (CellId c = 0; c < cx.num_cells(); ++c)
    if (cx.is_fully_open(c) && F.dim(c) != 0) return false;
  return true;
}

bool is_ephemeral(const ArrModule& F) { return beta_star(F).module().is_zero(); }

ExactnessReport exactness_probe(const ModMorphism& f) {
  auto ker = pointwise_kernel(f);
  auto im = pointwise_image(f);
  ModMorphism i = beta_star(ker.inclusion);
  ModMorphism e = beta_star(im.corestriction);
  const auto& cx = f.src().complex();
  for (CellId c = 0; c < cx.num_cells(); ++c) {
    const auto& ic = i.component(c);
    const auto& ec = e.component(c);
    std::string where = " at cell " + std::to_string(c);
    if (rank(ic) != ic.cols()) return {false, "kernel inclusion not injective" + where};
    if (rank(ec) != ec.rows()) return {false, "image corestriction not surjective" + where};
    if (!(ec * ic).is_zero()) return {false, "composite not zero" + where};
    if (ic.cols() + ec.rows() != ic.rows()) return {false, "not exact in the middle" + where};
  }
  return {true, "exact"};
}

}  // namespace gammamod
