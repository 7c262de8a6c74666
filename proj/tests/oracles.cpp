#include "oracles.hpp"

#include <algorithm>
#include <numeric>

using namespace gammamod;

namespace oracle {

Mat2 to_mat2(const FieldMat& m) {
  Mat2 r(m.rows(), Bits(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = m(i, j) & 1;
  return r;
}

Mat2 mul2(const Mat2& a, const Mat2& b, std::size_t inner, std::size_t cols) {
  Mat2 r(a.size(), Bits(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < cols; ++j) r[i][j] ^= b[k][j];
  return r;
}

namespace {

// Row-reduce in place; returns pivot columns.
std::vector<std::size_t> eliminate(Mat2& rows, std::size_t n) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t k = r;
    while (k < rows.size() && !rows[k][c]) ++k;
    if (k == rows.size()) continue;
    std::swap(rows[k], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && rows[i][c])
        for (std::size_t j = 0; j < n; ++j) rows[i][j] ^= rows[r][j];
    piv.push_back(c);
    ++r;
  }
  rows.resize(r);
  return piv;
}

}  // namespace

std::size_t rank2(Mat2 rows) {
  std::size_t n = rows.empty() ? 0 : rows[0].size();
  return eliminate(rows, n).size();
}

std::vector<Bits> nullspace2(const Mat2& in, std::size_t n) {
  Mat2 rows = in;
  auto piv = eliminate(rows, n);
  std::vector<bool> is_piv(n, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<Bits> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    Bits x(n, 0);
    x[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = rows[r][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

namespace {

std::vector<std::size_t> offsets(const Diagram& d, std::size_t& total) {
  std::vector<std::size_t> off;
  total = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    off.push_back(total);
    total += d.dim(i);
  }
  return off;
}

}  // namespace

std::size_t brute_limit_dim(const Diagram& d) {
  std::size_t total;
  auto off = offsets(d, total);
  std::size_t good = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << total); ++mask) {
    bool ok = true;
    for (const auto& a : d.arrows()) {
      Mat2 m = to_mat2(a.map);
      for (std::size_t r = 0; r < m.size() && ok; ++r) {
        std::uint8_t s = 0;
        for (std::size_t c = 0; c < d.dim(a.src); ++c) s ^= m[r][c] & ((mask >> (off[a.src] + c)) & 1);
        if (s != ((mask >> (off[a.dst] + r)) & 1)) ok = false;
      }
      if (!ok) break;
    }
    good += ok;
  }
  std::size_t dim = 0;
  while ((std::size_t{1} << dim) < good) ++dim;
  return dim;
}

std::size_t brute_colimit_dim(const Diagram& d) {
  std::size_t total;
  auto off = offsets(d, total);
  // relations: inject_src(x) - inject_dst(map x) for basis vectors x
  std::vector<std::uint64_t> gens;
  for (const auto& a : d.arrows()) {
    Mat2 m = to_mat2(a.map);
    for (std::size_t c = 0; c < d.dim(a.src); ++c) {
      std::uint64_t g = std::uint64_t{1} << (off[a.src] + c);
      for (std::size_t r = 0; r < m.size(); ++r)
        if (m[r][c]) g ^= std::uint64_t{1} << (off[a.dst] + r);
      gens.push_back(g);
    }
  }
  // size of the span by closure
  std::vector<std::uint64_t> span{0};
  for (auto g : gens) {
    if (std::find(span.begin(), span.end(), g) != span.end()) continue;
    std::size_t n = span.size();
    for (std::size_t i = 0; i < n; ++i) span.push_back(span[i] ^ g);
  }
  std::size_t rk = 0;
  while ((std::size_t{1} << rk) < span.size()) ++rk;
  return total - rk;
}

namespace {

struct Unknowns {
  std::vector<std::size_t> off, rows, cols;
  std::size_t n = 0;
  void add(std::size_t r, std::size_t c) {
    off.push_back(n);
    rows.push_back(r);
    cols.push_back(c);
    n += r * c;
  }
  std::size_t at(std::size_t cell, std::size_t r, std::size_t c) const { return off[cell] + r * cols[cell] + c; }
};

// Constraints  X_lo * A = B * X_c  for every cover pair of R, where
// A = src structure map between the shifted cells, B = dst structure map.
std::vector<Bits> natural_maps(const CellComplex& R, const ArrModule& src, const ArrModule& dst, const RatVec& v,
                               Unknowns& u) {
  for (CellId c = 0; c < R.num_cells(); ++c) {
    RatVec x = R.representative(c);
    u.add(dst.dim_at(x), src.dim_at(add(x, v)));
  }
  Mat2 eqs;
  for (CellId c = 0; c < R.num_cells(); ++c)
    for (std::size_t i = 0; i < R.dim(); ++i) {
      auto lo = R.down(c, i);
      if (!lo) continue;
      RatVec x = R.representative(c), y = R.representative(*lo);
      Mat2 A = to_mat2(src.map_at(add(x, v), add(y, v)));
      Mat2 B = to_mat2(dst.map_at(x, y));
      std::size_t rows = u.rows[*lo], cols = u.cols[c];
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t s = 0; s < cols; ++s) {
          Bits e(u.n, 0);
          for (std::size_t k = 0; k < u.cols[*lo]; ++k)
            if (A[k][s]) e[u.at(*lo, r, k)] ^= 1;
          for (std::size_t k = 0; k < u.rows[c]; ++k)
            if (B[r][k]) e[u.at(c, k, s)] ^= 1;
          eqs.push_back(std::move(e));
        }
    }
  return nullspace2(eqs, u.n);
}

Mat2 block_of(const Bits& x, const Unknowns& u, std::size_t cell) {
  Mat2 m(u.rows[cell], Bits(u.cols[cell]));
  for (std::size_t r = 0; r < u.rows[cell]; ++r)
    for (std::size_t c = 0; c < u.cols[cell]; ++c) m[r][c] = x[u.at(cell, r, c)];
  return m;
}

Bits combine(const std::vector<Bits>& basis, std::uint64_t mask, std::size_t n) {
  Bits x(n, 0);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if ((mask >> i) & 1)
      for (std::size_t j = 0; j < n; ++j) x[j] ^= basis[i][j];
  return x;
}

}  // namespace

ExhaustiveResult exhaustive_interleaving(const ArrModule& F, const ArrModule& G, const RatVec& v, std::size_t max_bits) {
  CellComplex fs = shift_complex(F.complex(), v), gs = shift_complex(G.complex(), v);
  CellComplex R = merge_complexes({&F.complex(), &G.complex(), &fs, &gs});
  Unknowns uf, ug;
  auto bf = natural_maps(R, F, G, v, uf);
  auto bg = natural_maps(R, G, F, v, ug);
  ExhaustiveResult res;
  res.f_dim = bf.size();
  res.g_dim = bg.size();
  if (bf.size() + bg.size() > max_bits) {
    res.skipped = true;
    return res;
  }
  CellComplex rs = shift_complex(R, v);
  CellComplex R2 = merge_complexes({&R, &rs});
  struct Tri {
    CellId at, at_v;
    Mat2 chiF, chiG;
  };
  std::vector<Tri> tris;
  for (CellId c = 0; c < R2.num_cells(); ++c) {
    RatVec z = R2.representative(c), z1 = add(z, v), z2 = add(z1, v);
    tris.push_back({R.cell_of(z), R.cell_of(z1), to_mat2(F.map_at(z2, z)), to_mat2(G.map_at(z2, z))});
  }
  std::vector<std::vector<Mat2>> fblocks, gblocks;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << bf.size()); ++m) {
    Bits x = combine(bf, m, uf.n);
    std::vector<Mat2> bl;
    for (CellId c = 0; c < R.num_cells(); ++c) bl.push_back(block_of(x, uf, c));
    fblocks.push_back(std::move(bl));
  }
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << bg.size()); ++m) {
    Bits x = combine(bg, m, ug.n);
    std::vector<Mat2> bl;
    for (CellId c = 0; c < R.num_cells(); ++c) bl.push_back(block_of(x, ug, c));
    gblocks.push_back(std::move(bl));
  }
  for (const auto& f : fblocks)
    for (const auto& g : gblocks) {
      bool ok = true;
      for (const auto& t : tris) {
        // g(z) f(z+v) = F(z+2v -> z), f(z) g(z+v) = G(z+2v -> z)
        if (mul2(g[t.at], f[t.at_v], ug.cols[t.at], uf.cols[t.at_v]) != t.chiF ||
            mul2(f[t.at], g[t.at_v], uf.cols[t.at], ug.cols[t.at_v]) != t.chiG) {
          ok = false;
          break;
        }
      }
      if (ok) {
        res.interleaved = true;
        return res;
      }
    }
  return res;
}

std::pair<Rat, Rat> bisection_gauge(const RatMat& normals, const RatVec& v, const RatVec& x, const Rat& tol) {
  auto in_cone = [&](const RatVec& y) {
    for (const auto& xi : normals) {
      Rat s(0);
      for (std::size_t i = 0; i < y.size(); ++i) s += xi[i] * y[i];
      if (s.sign() < 0) return false;
    }
    return true;
  };
  auto member = [&](const Rat& r) {
    RatVec a(x.size()), b(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      a[i] = x[i] - r * v[i];   // x in r v + gamma
      b[i] = -x[i] - r * v[i];  // x in -r v + gamma^a
    }
    return in_cone(a) && in_cone(b);
  };
  Rat lo(0), hi(1);
  while (!member(hi)) {
    lo = hi;
    hi *= 2;
  }
  if (member(Rat(0))) return {Rat(0), Rat(0)};
  while (hi - lo > tol) {
    Rat mid = (lo + hi) / Rat(2);
    if (member(mid))
      hi = mid;
    else
      lo = mid;
  }
  return {lo, hi};
}

std::optional<Rat> bottleneck(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::vector<std::size_t> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<Rat> best;
  do {
    Rat w(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      Rat d = a[i] - b[perm[i]];
      if (d.sign() < 0) d = -d;
      if (d > w) w = d;
    }
    if (!best || w < *best) best = w;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool strict_maps_vanish(const ArrModule& F) {
  const auto& cx = F.complex();
  for (CellId hi = 0; hi < cx.num_cells(); ++hi)
    for (CellId lo = 0; lo < cx.num_cells(); ++lo) {
      if (!cx.cell_leq(lo, hi)) continue;
      // some s in lo and t in hi with s < t in the cone order: always, unless
      // both are the same point cell
      if (lo == hi && cx.is_point(lo, 0)) continue;
      if (!F.map_between(hi, lo).is_zero()) return false;
    }
  return true;
}

std::vector<CellId> cells_meeting(const CellComplex& cx, CellId a, Side side) {
  RatVec x = cx.representative_grid(a);
  std::vector<CellId> out;
  for (CellId c = 0; c < cx.num_cells(); ++c) {
    bool meets = true;
    for (std::size_t i = 0; i < cx.dim() && meets; ++i) {
      // required direction of y_i - x_i on this axis
      int dir = cx.frame().sign(i) * (side == Side::interior ? 1 : -1);
      const auto& b = cx.axis(i).breakpoints();
      std::size_t k = cx.axis_index(c, i);
      if (AxisGrid::is_point(k)) {
        Rat d = b[k / 2] - x[i];
        meets = d.sign() == dir;
      } else {
        std::size_t j = k / 2;  // interval (b[j-1], b[j])
        if (dir > 0)
          meets = j == b.size() || b[j] > x[i];
        else
          meets = j == 0 || b[j - 1] < x[i];
      }
    }
    if (meets) out.push_back(c);
  }
  return out;
}

}  // namespace oracle
