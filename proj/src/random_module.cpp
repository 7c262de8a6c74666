#include "gammamod/errors.hpp"
#include "gammamod/module.hpp"

#include <algorithm>
#include <numeric>

namespace gammamod {

std::size_t draw(std::mt19937_64& rng, std::size_t n) {
  if (n == 0) throw DomainError("draw from an empty range");
  return static_cast<std::size_t>(rng() % n);
}

namespace {

FieldVec random_combination(std::mt19937_64& rng, const FieldMat& basis) {
  const auto p = basis.prime();
  FieldVec x(basis.rows(), 0);
  for (std::size_t k = 0; k < basis.cols(); ++k) {
    std::uint64_t c = draw(rng, p);
    if (!c) continue;
    for (std::size_t r = 0; r < basis.rows(); ++r) x[r] = static_cast<Residue>((x[r] + c * basis(r, k)) % p);
  }
  return x;
}

}  // namespace

ArrModule random_module_on(std::mt19937_64& rng, const CellComplex& cx, const RandomModuleOptions& opt) {
  const auto p = opt.prime;
  const std::size_t n = cx.num_cells(), d = cx.dim();
  // Process cells bottom-up so all lower neighbours are fixed first.
  std::vector<std::size_t> height(n, 0);
  for (CellId c = 0; c < n; ++c)
    for (std::size_t i = 0; i < d; ++i) {
      auto k = cx.axis_index(c, i);
      height[c] += cx.down_step(i) < 0 ? k : cx.axis(i).num_cells() - 1 - k;
    }
  std::vector<CellId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](CellId a, CellId b) { return height[a] < height[b]; });

  std::vector<std::size_t> dims(n, 0);
  std::vector<std::vector<FieldMat>> maps(n, std::vector<FieldMat>(d));
  for (CellId c : order) {
    std::size_t r = draw(rng, opt.max_cell_dim + 1 + opt.zero_weight);
    dims[c] = r <= opt.zero_weight ? 0 : r - opt.zero_weight;
    LinearSystem sys(p);
    std::vector<std::size_t> unknown(d, SIZE_MAX);
    for (std::size_t i = 0; i < d; ++i)
      if (auto lo = cx.down(c, i)) unknown[i] = sys.add_unknown(dims[*lo], dims[c]);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) {
        if (unknown[i] == SIZE_MAX || unknown[j] == SIZE_MAX) continue;
        CellId di = *cx.down(c, i), dj = *cx.down(c, j);
        CellId corner = *cx.down(di, j);
        if (dims[corner] == 0 || dims[c] == 0) continue;
        FieldMat id = FieldMat::identity(p, dims[c]);
        sys.add_equation({{unknown[i], maps[di][j], id}, {unknown[j], maps[dj][i].scaled(p - 1), id}},
                         FieldMat(p, dims[corner], dims[c]));
      }
    auto space = affine_solution_space(sys);
    auto mats = sys.unpack(random_combination(rng, space.basis));
    for (std::size_t i = 0; i < d; ++i)
      if (unknown[i] != SIZE_MAX) maps[c][i] = std::move(mats[unknown[i]]);
  }
  return ArrModule(cx, p, std::move(dims), std::move(maps));
}

ArrModule random_module(std::uint64_t seed, const FramePtr& frame, const RandomModuleOptions& opt) {
  std::mt19937_64 rng(seed);
  std::vector<AxisGrid> axes;
  for (std::size_t i = 0; i < frame->dim(); ++i) {
    std::size_t k = draw(rng, opt.max_breakpoints + 1);
    std::vector<Rat> b;
    for (std::size_t t = 0; t < k; ++t) {
      long long m = static_cast<long long>(draw(rng, 4 * opt.coordinate_range + 1)) - 2 * opt.coordinate_range;
      b.push_back(draw(rng, 4) == 0 ? Rat(m, 2) : Rat(m / 2));
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    axes.emplace_back(std::move(b));
  }
  return random_module_on(rng, CellComplex(frame, std::move(axes)), opt);
}

ModMorphism random_morphism(std::mt19937_64& rng, const ArrModule& src, const ArrModule& dst) {
  auto hom = natural_hom_space(src, dst);
  return ModMorphism(src, dst, hom.system.unpack(random_combination(rng, hom.basis)));
}

}  // namespace gammamod
