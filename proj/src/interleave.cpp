#include "gammamod/interleave.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace gammamod {

namespace {

class MapCache {
 public:
  explicit MapCache(const ArrModule& m) : m_(m), n_(m.complex().num_cells()) {}

  const FieldMat& get(CellId hi, CellId lo) {
    auto key = static_cast<std::uint64_t>(hi) * n_ + lo;
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    return memo_.emplace(key, m_.map_between(hi, lo)).first->second;
  }

  std::size_t rank_of(CellId hi, CellId lo) {
    if (ranks_.empty()) ranks_.assign(n_ * n_, -1);
    auto& slot = ranks_[static_cast<std::uint64_t>(hi) * n_ + lo];
    if (slot < 0) slot = static_cast<int>(rank(get(hi, lo)));
    return static_cast<std::size_t>(slot);
  }

 private:
  const ArrModule& m_;
  std::uint64_t n_;
  std::unordered_map<std::uint64_t, FieldMat> memo_;
  std::vector<int> ranks_;
};

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Natural transformations shift(X, v) -> Y restricted to the grid, with
// cells merged where both structure maps are identities.
struct Family {
  std::vector<std::size_t> cls;  // grid cell -> class
  std::vector<std::size_t> rows, cols, offset;
  std::size_t nvars = 0;
  FieldMat basis;

  FieldMat block(const FieldVec& x, std::size_t c) const {
    FieldMat m(basis.prime(), rows[c], cols[c]);
    for (std::size_t i = 0; i < rows[c]; ++i)
      for (std::size_t j = 0; j < cols[c]; ++j) m.set(i, j, x[offset[c] + i * cols[c] + j]);
    return m;
  }
};

Family build_family(const CellComplex& R, std::uint32_t p, MapCache& X, const std::vector<CellId>& xcell,
                    const ArrModule& Xm, MapCache& Y, const std::vector<CellId>& ycell, const ArrModule& Ym) {
  const std::size_t n = R.num_cells();
  UnionFind uf(n);
  struct Cover {
    CellId hi, lo;
  };
  std::vector<Cover> covers;
  for (CellId c = 0; c < n; ++c)
    for (std::size_t i = 0; i < R.dim(); ++i) {
      auto lo = R.down(c, i);
      if (!lo) continue;
      const bool xid = xcell[c] == xcell[*lo] || X.get(xcell[c], xcell[*lo]).is_identity();
      const bool yid = ycell[c] == ycell[*lo] || Y.get(ycell[c], ycell[*lo]).is_identity();
      if (xid && yid)
        uf.unite(c, *lo);
      else
        covers.push_back({c, *lo});
    }
  Family fam;
  fam.cls.assign(n, 0);
  std::vector<std::size_t> root_class(n, SIZE_MAX);
  LinearSystem sys(p);
  for (CellId c = 0; c < n; ++c) {
    auto r = uf.find(c);
    if (root_class[r] == SIZE_MAX) {
      root_class[r] = fam.rows.size();
      fam.rows.push_back(Ym.dim(ycell[c]));
      fam.cols.push_back(Xm.dim(xcell[c]));
      sys.add_unknown(fam.rows.back(), fam.cols.back());
      fam.offset.push_back(sys.offset(root_class[r]));
    }
    fam.cls[c] = root_class[r];
  }
  fam.nvars = sys.num_variables();
  std::unordered_set<std::string> seen;
  for (const auto& cv : covers) {
    std::size_t a = fam.cls[cv.hi], b = fam.cls[cv.lo];
    if (fam.rows[b] == 0 || fam.cols[a] == 0) continue;
    const FieldMat& sx = xcell[cv.hi] == xcell[cv.lo] ? FieldMat::identity(p, fam.cols[a]) : X.get(xcell[cv.hi], xcell[cv.lo]);
    const FieldMat& sy = ycell[cv.hi] == ycell[cv.lo] ? FieldMat::identity(p, fam.rows[a]) : Y.get(ycell[cv.hi], ycell[cv.lo]);
    std::string key = std::to_string(a) + "|" + std::to_string(b) + "|" + sx.key() + "|" + sy.key();
    if (!seen.insert(key).second) continue;
    // f_lo Sx - Sy f_hi = 0
    sys.add_equation({{b, FieldMat::identity(p, fam.rows[b]), sx}, {a, sy.scaled(p - 1), FieldMat::identity(p, fam.cols[a])}},
                     FieldMat(p, fam.rows[b], fam.cols[a]));
  }
  fam.basis = affine_solution_space(sys).basis;
  return fam;
}

// s_{s_cls} e_{e_cls} = chi when s_left, else e_{e_cls} s_{s_cls} = chi.
struct TriEq {
  std::size_t s_cls, e_cls;
  bool s_left;
  FieldMat chi;
};

// Row-echelon accumulator for the solved family's coefficients.
class Echelon {
 public:
  Echelon(std::uint32_t p, std::size_t vars) : p_(p), vars_(vars) {}

  // Row of length vars + 1 (last entry is the right-hand side).
  bool add(FieldVec row) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      std::uint64_t f = row[piv_[k]];
      if (!f) continue;
      const auto& r = rows_[k];
      for (std::size_t j = 0; j <= vars_; ++j) row[j] = static_cast<Residue>((row[j] + (p_ - f) * r[j]) % p_);
    }
    std::size_t lead = 0;
    while (lead < vars_ && row[lead] == 0) ++lead;
    if (lead == vars_) return row[vars_] == 0;
    std::uint64_t inv = field_inv(row[lead], p_);
    for (auto& x : row) x = static_cast<Residue>(x * inv % p_);
    // keep previous rows reduced against the new pivot
    for (auto& r : rows_) {
      std::uint64_t f = r[lead];
      if (!f) continue;
      for (std::size_t j = 0; j <= vars_; ++j) r[j] = static_cast<Residue>((r[j] + (p_ - f) * row[j]) % p_);
    }
    rows_.push_back(std::move(row));
    piv_.push_back(lead);
    return true;
  }

  FieldVec solution() const {
    FieldVec x(vars_, 0);
    for (std::size_t k = 0; k < rows_.size(); ++k) x[piv_[k]] = rows_[k][vars_];
    return x;
  }

 private:
  std::uint32_t p_;
  std::size_t vars_;
  std::vector<FieldVec> rows_;
  std::vector<std::size_t> piv_;
};

struct Instance {
  const ArrModule& F;
  const ArrModule& G;
  RatVec v, vg;
  CellComplex R, R2;
  MapCache mf, mg;
  std::uint32_t p;
  Family fam[2];  // 0: shift(F) -> G, 1: shift(G) -> F
  struct Tri {
    CellId a, b;  // grid cells of z and z + v
    CellId f0, f2, g0, g2;
  };
  std::vector<Tri> tris;
  std::vector<CellId> rf1, rg1;  // per R2 cell: F and G cells of z + v

  Instance(const ArrModule& f, const ArrModule& g, const RatVec& shift)
      : F(f), G(g), v(shift), vg(f.complex().frame().to_grid(shift)),
        R(build_grid(f, g, shift)), R2(build_grid2(R, shift)), mf(f), mg(g), p(f.prime()) {}

  static CellComplex build_grid(const ArrModule& f, const ArrModule& g, const RatVec& v) {
    CellComplex a = shift_complex(f.complex(), v), b = shift_complex(g.complex(), v);
    return merge_complexes({&f.complex(), &g.complex(), &a, &b});
  }
  static CellComplex build_grid2(const CellComplex& r, const RatVec& v) {
    CellComplex s = shift_complex(r, v);
    return merge_complexes({&r, &s});
  }

  void build() {
    const std::size_t n = R.num_cells();
    std::vector<CellId> f0(n), f1(n), g0(n), g1(n);
    for (CellId c = 0; c < n; ++c) {
      RatVec y = R.representative_grid(c);
      RatVec yv = add(y, vg);
      f0[c] = F.complex().cell_of_grid(y);
      f1[c] = F.complex().cell_of_grid(yv);
      g0[c] = G.complex().cell_of_grid(y);
      g1[c] = G.complex().cell_of_grid(yv);
    }
    fam[0] = build_family(R, p, mf, f1, F, mg, g0, G);
    fam[1] = build_family(R, p, mg, g1, G, mf, f0, F);
    const std::size_t n2 = R2.num_cells();
    rf1.resize(n2);
    rg1.resize(n2);
    for (CellId x = 0; x < n2; ++x) {
      RatVec z = R2.representative_grid(x);
      RatVec z1 = add(z, vg), z2 = add(z1, vg);
      Tri t{R.cell_of_grid(z), R.cell_of_grid(z1), F.complex().cell_of_grid(z), F.complex().cell_of_grid(z2),
            G.complex().cell_of_grid(z), G.complex().cell_of_grid(z2)};
      rf1[x] = F.complex().cell_of_grid(z1);
      rg1[x] = G.complex().cell_of_grid(z1);
      tris.push_back(t);
    }
  }

  // rk F(y+2v -> x) <= rk G(y+v -> x+v) and symmetrically, over grid pairs x <= y.
  bool rank_condition() {
    const std::size_t n2 = R2.num_cells(), d = R2.dim();
    // oriented per-axis positions: x <= y iff pos(x) <= pos(y) on every axis
    std::vector<long> pos(n2 * d);
    for (CellId x = 0; x < n2; ++x)
      for (std::size_t i = 0; i < d; ++i) {
        long k = static_cast<long>(R2.axis_index(x, i));
        pos[x * d + i] = R2.down_step(i) < 0 ? k : -k;
      }
    for (CellId x = 0; x < n2; ++x)
      for (CellId y = 0; y < n2; ++y) {
        bool le = true;
        for (std::size_t i = 0; i < d && le; ++i) le = pos[x * d + i] <= pos[y * d + i];
        if (!le) continue;
        const auto& tx = tris[x];
        const auto& ty = tris[y];
        if (mf.rank_of(ty.f2, tx.f0) > mg.rank_of(rg1[y], rg1[x])) return false;
        if (mg.rank_of(ty.g2, tx.g0) > mf.rank_of(rf1[y], rf1[x])) return false;
      }
    return true;
  }

  std::vector<TriEq> equations(int e) {
    std::vector<TriEq> out;
    std::unordered_set<std::string> seen;
    auto push = [&](std::size_t s_cls, std::size_t e_cls, bool s_left, const FieldMat& chi, char tag) {
      std::string key = std::string(1, tag) + std::to_string(s_cls) + "|" + std::to_string(e_cls) + "|" + chi.key();
      if (seen.insert(key).second) out.push_back({s_cls, e_cls, s_left, chi});
    };
    const Family& ff = fam[0];
    const Family& gg = fam[1];
    for (const auto& t : tris) {
      const FieldMat& chiF = mf.get(t.f2, t.f0);
      const FieldMat& chiG = mg.get(t.g2, t.g0);
      // g_a f_b = chiF ; f_a g_b = chiG
      if (e == 0) {
        push(gg.cls[t.a], ff.cls[t.b], true, chiF, 'F');
        push(gg.cls[t.b], ff.cls[t.a], false, chiG, 'G');
      } else {
        push(ff.cls[t.b], gg.cls[t.a], false, chiF, 'F');
        push(ff.cls[t.a], gg.cls[t.b], true, chiG, 'G');
      }
    }
    return out;
  }
};

struct Search {
  const Family& E;
  const Family& S;
  std::vector<TriEq> eqs;
  std::uint32_t p;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  bool exhausted = false;
  std::vector<std::size_t> order;
  std::vector<std::vector<std::size_t>> at_depth;  // index depth+1
  std::vector<std::vector<FieldMat>> sblk;          // [j][class]
  FieldVec cur;
  std::optional<FieldVec> found_e, found_s;

  Search(const Family& e, const Family& s, std::vector<TriEq> q, std::uint32_t prime, std::uint64_t b)
      : E(e), S(s), eqs(std::move(q)), p(prime), budget(b) {
    const std::size_t ke = E.basis.cols(), ks = S.basis.cols();
    sblk.resize(ks);
    for (std::size_t j = 0; j < ks; ++j) {
      FieldVec col(S.nvars);
      for (std::size_t r = 0; r < S.nvars; ++r) col[r] = S.basis(r, j);
      for (std::size_t c = 0; c < S.rows.size(); ++c) sblk[j].push_back(S.block(col, c));
    }
    // basis columns touching each class of E
    std::vector<std::vector<std::size_t>> touch(E.rows.size());
    for (std::size_t c = 0; c < E.rows.size(); ++c)
      for (std::size_t j = 0; j < ke; ++j) {
        bool nz = false;
        for (std::size_t r = E.offset[c]; r < E.offset[c] + E.rows[c] * E.cols[c] && !nz; ++r) nz = E.basis(r, j) != 0;
        if (nz) touch[c].push_back(j);
      }
    // greedy: finish the equations with the fewest open coefficients first
    std::vector<std::size_t> pos(ke, SIZE_MAX);
    std::vector<bool> done(eqs.size(), false);
    while (order.size() < ke) {
      std::size_t best = SIZE_MAX, best_open = SIZE_MAX;
      for (std::size_t q = 0; q < eqs.size(); ++q) {
        if (done[q]) continue;
        std::size_t open = 0;
        for (auto j : touch[eqs[q].e_cls]) open += pos[j] == SIZE_MAX;
        if (open == 0) {
          done[q] = true;
          continue;
        }
        if (open < best_open) {
          best_open = open;
          best = q;
        }
      }
      if (best == SIZE_MAX) {
        for (std::size_t j = 0; j < ke; ++j)
          if (pos[j] == SIZE_MAX) {
            pos[j] = order.size();
            order.push_back(j);
          }
        break;
      }
      for (auto j : touch[eqs[best].e_cls])
        if (pos[j] == SIZE_MAX) {
          pos[j] = order.size();
          order.push_back(j);
        }
      done[best] = true;
    }
    at_depth.assign(ke + 1, {});
    for (std::size_t q = 0; q < eqs.size(); ++q) {
      std::size_t trig = 0;
      for (auto j : touch[eqs[q].e_cls]) trig = std::max(trig, pos[j] + 1);
      at_depth[trig].push_back(q);
    }
    cur.assign(E.nvars, 0);
  }

  bool feed(Echelon& ech, const TriEq& q) {
    const std::size_t ks = S.basis.cols();
    FieldMat eb = E.block(cur, q.e_cls);
    std::vector<FieldMat> prods;
    for (std::size_t j = 0; j < ks; ++j)
      prods.push_back(q.s_left ? sblk[j][q.s_cls] * eb : eb * sblk[j][q.s_cls]);
    for (std::size_t r = 0; r < q.chi.rows(); ++r)
      for (std::size_t c = 0; c < q.chi.cols(); ++c) {
        FieldVec row(ks + 1);
        for (std::size_t j = 0; j < ks; ++j) row[j] = prods[j](r, c);
        row[ks] = q.chi(r, c);
        if (!ech.add(std::move(row))) return false;
      }
    return true;
  }

  void axpy(std::size_t col, std::uint64_t a) {
    if (!a) return;
    for (std::size_t r = 0; r < E.nvars; ++r) {
      Residue b = E.basis(r, col);
      if (b) cur[r] = static_cast<Residue>((cur[r] + a * b) % p);
    }
  }

  bool dfs(std::size_t depth, const Echelon& ech) {
    if (depth == order.size()) {
      found_e = cur;
      found_s = ech.solution();
      return true;
    }
    for (std::uint32_t val = 0; val < p; ++val) {
      if (++nodes > budget) {
        exhausted = true;
        return false;
      }
      axpy(order[depth], val);
      Echelon next = ech;
      bool ok = true;
      for (auto q : at_depth[depth + 1]) {
        ok = feed(next, eqs[q]);
        if (!ok) break;
      }
      if (ok && dfs(depth + 1, next)) return true;
      axpy(order[depth], (p - val) % p);
      if (exhausted) return false;
    }
    return false;
  }

  bool run() {
    Echelon root(p, S.basis.cols());
    for (auto q : at_depth[0])
      if (!feed(root, eqs[q])) return false;
    return dfs(0, root);
  }
};

void check_inputs(const ArrModule& F, const ArrModule& G, const RatVec& v) {
  if (F.prime() != G.prime()) throw DomainError("modules use different fields");
  if (!(F.complex().frame() == G.complex().frame())) throw DomainError("modules use different cones");
  const auto& cone = F.complex().frame().cone();
  if (v.size() != cone.dim()) throw DimensionError("shift vector has the wrong dimension");
  if (!contains(cone, neg(v))) throw DomainError("shift " + to_string(v) + " is not in the antipodal cone");
}

std::vector<FieldMat> expand(const Family& fam, const FieldVec& vars, std::size_t ncells) {
  std::vector<FieldMat> out;
  for (CellId c = 0; c < ncells; ++c) out.push_back(fam.block(vars, fam.cls[c]));
  return out;
}

}  // namespace

Decision decide_interleaving(const ArrModule& F, const ArrModule& G, const RatVec& v, const SearchOptions& opt) {
  check_inputs(F, G, v);
  Decision d;
  Instance inst(F, G, v);
  inst.build();
  if (!inst.rank_condition()) return d;
  const int e = inst.fam[0].basis.cols() <= inst.fam[1].basis.cols() ? 0 : 1;
  const std::uint64_t budget = opt.budget_bits >= 63 ? UINT64_MAX : (std::uint64_t{1} << opt.budget_bits);
  Search s(inst.fam[e], inst.fam[1 - e], inst.equations(e), inst.p, budget);
  bool found = s.run();
  d.nodes = s.nodes;
  if (!found) {
    d.verdict = s.exhausted ? Verdict::budget_exceeded : Verdict::not_interleaved;
    return d;
  }
  FieldVec evars = *s.found_e;
  // coefficients of the solved family -> its variables
  FieldVec svars(inst.fam[1 - e].nvars, 0);
  const auto& sb = inst.fam[1 - e].basis;
  for (std::size_t j = 0; j < sb.cols(); ++j) {
    std::uint64_t c = (*s.found_s)[j];
    if (!c) continue;
    for (std::size_t r = 0; r < svars.size(); ++r) svars[r] = static_cast<Residue>((svars[r] + c * sb(r, j)) % inst.p);
  }
  const FieldVec& fv = e == 0 ? evars : svars;
  const FieldVec& gv = e == 0 ? svars : evars;
  InterleavingWitness w{inst.R, v, expand(inst.fam[0], fv, inst.R.num_cells()), expand(inst.fam[1], gv, inst.R.num_cells())};
  if (auto err = verify_witness(F, G, w)) throw std::logic_error("interleaving search produced a bad witness: " + *err);
  d.verdict = Verdict::interleaved;
  d.witness = std::move(w);
  return d;
}

std::optional<InterleavingWitness> is_interleaved(const ArrModule& F, const ArrModule& G, const RatVec& v,
                                                  const SearchOptions& opt) {
  auto d = decide_interleaving(F, G, v, opt);
  if (d.verdict == Verdict::budget_exceeded) throw BudgetExceeded("interleaving search exceeded its budget");
  return d.witness;
}

std::optional<InterleavingWitness> is_interleaved(const GammaModule& F, const GammaModule& G, const RatVec& v,
                                                  const SearchOptions& opt) {
  return is_interleaved(F.module(), G.module(), v, opt);
}

std::optional<std::string> verify_witness(const ArrModule& F, const ArrModule& G, const InterleavingWitness& w) {
  try {
    check_inputs(F, G, w.shift);
  } catch (const Error& e) {
    return std::string(e.what());
  }
  const auto& R = w.grid;
  const RatVec& v = w.shift;
  CellComplex fs = shift_complex(F.complex(), v), gs = shift_complex(G.complex(), v);
  for (const CellComplex* c : std::vector<const CellComplex*>{&F.complex(), &G.complex(), &fs, &gs})
    if (!is_refinement_of(R, *c)) return std::string("witness grid does not refine the modules and their shifts");
  if (w.f.size() != R.num_cells() || w.g.size() != R.num_cells()) return std::string("witness has the wrong cell count");
  for (CellId c = 0; c < R.num_cells(); ++c) {
    RatVec x = R.representative(c), xv = add(x, v);
    if (w.f[c].rows() != G.dim_at(x) || w.f[c].cols() != F.dim_at(xv)) return "f has the wrong shape at cell " + std::to_string(c);
    if (w.g[c].rows() != F.dim_at(x) || w.g[c].cols() != G.dim_at(xv)) return "g has the wrong shape at cell " + std::to_string(c);
  }
  for (CellId c = 0; c < R.num_cells(); ++c)
    for (std::size_t i = 0; i < R.dim(); ++i) {
      auto lo = R.down(c, i);
      if (!lo) continue;
      RatVec x = R.representative(c), y = R.representative(*lo);
      RatVec xv = add(x, v), yv = add(y, v);
      if (!(w.f[*lo] * F.map_at(xv, yv) == G.map_at(x, y) * w.f[c])) return "f is not natural below cell " + std::to_string(c);
      if (!(w.g[*lo] * G.map_at(xv, yv) == F.map_at(x, y) * w.g[c])) return "g is not natural below cell " + std::to_string(c);
    }
  CellComplex rs = shift_complex(R, v);
  CellComplex R2 = merge_complexes({&R, &rs});
  for (CellId c = 0; c < R2.num_cells(); ++c) {
    RatVec z = R2.representative(c), z1 = add(z, v), z2 = add(z1, v);
    CellId a = R.cell_of(z), b = R.cell_of(z1);
    if (!(w.g[a] * w.f[b] == F.map_at(z2, z))) return "g f differs from the smoothing map of F at " + to_string(z);
    if (!(w.f[a] * w.g[b] == G.map_at(z2, z))) return "f g differs from the smoothing map of G at " + to_string(z);
  }
  return std::nullopt;
}

ModMorphism witness_f(const ArrModule& F, const ArrModule& G, const InterleavingWitness& w) {
  return ModMorphism(refine(shift(F, w.shift), w.grid), refine(G, w.grid), w.f);
}

ModMorphism witness_g(const ArrModule& F, const ArrModule& G, const InterleavingWitness& w) {
  return ModMorphism(refine(shift(G, w.shift), w.grid), refine(F, w.grid), w.g);
}

InterleavingWitness map_witness(const InterleavingWitness& w, WitnessFunctor fn) {
  Side side = fn == WitnessFunctor::beta_inv ? Side::antipodal_interior : Side::interior;
  InterleavingWitness out{w.grid, w.shift, {}, {}};
  for (CellId c = 0; c < w.grid.num_cells(); ++c) {
    CellId s = w.grid.just_inside(c, side);
    out.f.push_back(w.f[s]);
    out.g.push_back(w.g[s]);
  }
  return out;
}

bool zero_interleaving_criterion(const ArrModule& F, const RatVec& v) {
  const auto& cone = F.complex().frame().cone();
  if (!interior_contains(cone, neg(v))) throw DomainError("zero interleaving criterion needs v interior to the antipodal cone");
  return is_zero_morphism(smoothing(F, scale(Rat(2), v), zeros(v.size())));
}

}  // namespace gammamod
