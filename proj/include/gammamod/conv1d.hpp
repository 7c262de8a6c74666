#pragma once

#include "gammamod/cone.hpp"
#include "gammamod/interleave.hpp"
#include "gammamod/sites.hpp"

#include <optional>
#include <vector>

namespace gammamod {

// Direct sum of closed rays [t, inf) on the line, gamma = (-inf, 0].
class RaySheaf {
 public:
  RaySheaf() = default;
  explicit RaySheaf(std::vector<Rat> births);
  const std::vector<Rat>& births() const { return births_; }  // sorted
  std::size_t size() const { return births_.size(); }
  friend bool operator==(const RaySheaf& a, const RaySheaf& b) { return a.births_ == b.births_; }

 private:
  std::vector<Rat> births_;
};

// Closed interval [lo, hi], or the ray [lo, inf) when hi is empty.
struct ClosedInterval {
  Rat lo;
  std::optional<Rat> hi;
};

// The gauge data must live on the cone (-inf, 0] in dimension 1.
void check_line_gauge(const GaugeSpec& g);
RaySheaf convolve_ball(const RaySheaf& F, const Rat& r, const GaugeSpec& g);
// Support of S convolved (non-proper) with the constant sheaf on [0, inf):
// the union over a in S of a + [0, inf).
ClosedInterval antipodal_hull(const ClosedInterval& s);
bool interval_is_gamma_fixed(const ClosedInterval& s);
bool gamma_fixed_check(const RaySheaf& F);

struct CIsoOptions {
  std::uint32_t prime = 2;
  unsigned budget_bits = 20;
};

bool is_c_isomorphic(const RaySheaf& F, const RaySheaf& G, const Rat& c, const GaugeSpec& g, const CIsoOptions& opt = {});
// Exhaustive pattern-matrix search; nullopt when it does not fit the budget.
std::optional<bool> c_isomorphic_by_search(const RaySheaf& F, const RaySheaf& G, const Rat& c, const GaugeSpec& g,
                                           const CIsoOptions& opt = {});
// In-order matching of sorted births.
bool c_isomorphic_by_matching(const RaySheaf& F, const RaySheaf& G, const Rat& c, const GaugeSpec& g);

DistanceResult convolution_distance(const RaySheaf& F, const RaySheaf& G, const GaugeSpec& g, const CIsoOptions& opt = {});

// gamma-module on the line: k on every cell strictly above each birth.
GammaModule ray_gamma_module(const RaySheaf& F, const FramePtr& frame, std::uint32_t p = 2);

struct ConvComparison {
  DistanceResult d_conv, d_int;
  bool equal = false;
};

ConvComparison compare_with_interleaving(const RaySheaf& F, const RaySheaf& G, const GaugeSpec& g,
                                         const DistanceOptions& opt = {});

struct ProperReport {
  bool literal = true;
  bool mirrored = true;
};

ProperReport properness_report(const RaySheaf& F, const ConeSpec& cone);
ProperReport properness_report(const std::vector<ClosedInterval>& supports, const ConeSpec& cone);

}  // namespace gammamod
