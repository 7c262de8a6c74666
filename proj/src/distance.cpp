#include "gammamod/interleave.hpp"

#include <algorithm>
#include <map>

namespace gammamod {

std::vector<Rat> candidate_scales(const ArrModule& F, const ArrModule& G, const RatVec& v0) {
  RatVec vg = F.complex().frame().to_grid(v0);
  std::vector<Rat> c{Rat(0)};
  for (std::size_t i = 0; i < vg.size(); ++i) {
    if (vg[i].is_zero()) continue;
    std::vector<Rat> b = F.complex().axis(i).breakpoints();
    const auto& gb = G.complex().axis(i).breakpoints();
    b.insert(b.end(), gb.begin(), gb.end());
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    Rat step = vg[i].abs();
    for (std::size_t x = 0; x < b.size(); ++x)
      for (std::size_t y = x + 1; y < b.size(); ++y) {
        Rat d = b[y] - b[x];
        c.push_back(d / step);
        c.push_back(d / (step * Rat(2)));
      }
  }
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

namespace {

class Decider {
 public:
  Decider(const ArrModule& F, const ArrModule& G, const RatVec& v0, const SearchOptions& s)
      : F_(F), G_(G), v0_(v0), s_(s) {}

  Verdict operator()(const Rat& c, std::optional<InterleavingWitness>* w = nullptr) {
    auto it = memo_.find(c);
    if (it == memo_.end()) {
      ++calls;
      auto d = decide_interleaving(F_, G_, scale(c, v0_), s_);
      it = memo_.emplace(c, std::move(d)).first;
    }
    if (w) *w = it->second.witness;
    return it->second.verdict;
  }

  std::uint64_t calls = 0;

 private:
  const ArrModule& F_;
  const ArrModule& G_;
  RatVec v0_;
  SearchOptions s_;
  std::map<Rat, Decision> memo_;
};

}  // namespace

DistanceResult interleaving_distance(const ArrModule& F, const ArrModule& G, const RatVec& v0,
                                     const DistanceOptions& opt) {
  const auto& cone = F.complex().frame().cone();
  if (v0.size() != cone.dim()) throw DimensionError("direction has the wrong dimension");
  if (!interior_contains(cone, neg(v0))) throw DomainError("direction " + to_string(v0) + " is not interior to the antipodal cone");
  Decider decide(F, G, v0, opt.search);
  auto cands = candidate_scales(F, G, v0);
  const Rat top = cands.back() + 1;
  DistanceResult res;

  auto bracket = [&](const Rat& lo, std::optional<Rat> hi) {
    res.kind = DistanceResult::Kind::bracketed;
    res.budget_exceeded = true;
    res.lo = lo;
    res.hi_infinite = !hi;
    if (hi) res.hi = *hi;
    res.decisions = decide.calls;
    return res;
  };

  Verdict vt = decide(top, &res.witness);
  if (vt == Verdict::budget_exceeded) return bracket(Rat(0), std::nullopt);
  if (vt == Verdict::not_interleaved) {
    res.infinite = true;
    res.hi_infinite = true;
    res.decisions = decide.calls;
    return res;
  }

  if (opt.mode == DistanceOptions::Mode::bisection) {
    Verdict v0v = decide(Rat(0), &res.witness);
    if (v0v == Verdict::interleaved) {
      res.value = 0;
      res.attained = true;
      res.decisions = decide.calls;
      return res;
    }
    if (v0v == Verdict::budget_exceeded) return bracket(Rat(0), top);
    Rat lo = 0, hi = top;
    decide(hi, &res.witness);
    while (hi - lo > opt.tolerance) {
      Rat mid = (lo + hi) / Rat(2);
      std::optional<InterleavingWitness> w;
      Verdict m = decide(mid, &w);
      if (m == Verdict::budget_exceeded) return bracket(lo, hi);
      if (m == Verdict::interleaved) {
        hi = mid;
        res.witness = std::move(w);
      } else {
        lo = mid;
      }
    }
    res.kind = DistanceResult::Kind::bracketed;
    res.lo = lo;
    res.hi = hi;
    res.value = hi;
    res.attained = false;
    res.decisions = decide.calls;
    return res;
  }

  // positions 2j -> c_j, 2j+1 -> midpoint after c_j, last -> top
  const std::size_t m = cands.size();
  auto scale_at = [&](std::size_t pos) -> Rat {
    std::size_t j = pos / 2;
    if (pos % 2 == 0) return cands[j];
    return j + 1 < m ? (cands[j] + cands[j + 1]) / Rat(2) : top;
  };
  long lo = -1, hi = static_cast<long>(2 * m - 1);
  while (hi - lo > 1) {
    long mid = lo + (hi - lo) / 2;
    Verdict v = decide(scale_at(static_cast<std::size_t>(mid)));
    if (v == Verdict::budget_exceeded) return bracket(lo < 0 ? Rat(0) : scale_at(static_cast<std::size_t>(lo)), scale_at(static_cast<std::size_t>(hi)));
    if (v == Verdict::interleaved)
      hi = mid;
    else
      lo = mid;
  }
  // certify just below the optimum
  if (hi > 0 && decide(scale_at(static_cast<std::size_t>(hi - 1))) != Verdict::not_interleaved)
    return bracket(Rat(0), scale_at(static_cast<std::size_t>(hi)));
  decide(scale_at(static_cast<std::size_t>(hi)), &res.witness);
  res.kind = DistanceResult::Kind::exact;
  res.value = cands[static_cast<std::size_t>(hi) / 2];
  res.attained = hi % 2 == 0;
  res.lo = res.hi = res.value;
  res.decisions = decide.calls;
  return res;
}

bool same_distance(const DistanceResult& a, const DistanceResult& b) {
  if (a.infinite || b.infinite) return a.infinite == b.infinite;
  return a.value == b.value;
}

std::string distance_string(const DistanceResult& d) { return d.infinite ? "inf" : d.value.str(); }

std::vector<bool> inter_probe(const ArrModule& F, const ArrModule& G, const std::vector<RatVec>& samples,
                              const SearchOptions& opt) {
  const auto& cone = F.complex().frame().cone();
  std::vector<bool> out;
  for (const auto& s : samples) {
    if (!interior_contains(cone, neg(s))) throw DomainError("probe vector " + to_string(s) + " is not interior to the antipodal cone");
    auto d = decide_interleaving(F, G, s, opt);
    if (d.verdict == Verdict::budget_exceeded) throw BudgetExceeded("inter_probe exceeded its budget");
    out.push_back(d.verdict == Verdict::interleaved);
  }
  return out;
}

IsometryReport isometry_check(const ArrModule& F, const ArrModule& G, const RatVec& v0, const DistanceOptions& opt) {
  IsometryReport r;
  r.lhs = interleaving_distance(F, G, v0, opt);
  r.rhs = interleaving_distance(beta_star(F).module(), beta_star(G).module(), v0, opt);
  r.equal = !r.lhs.budget_exceeded && !r.rhs.budget_exceeded && same_distance(r.lhs, r.rhs);
  return r;
}

}  // namespace gammamod
