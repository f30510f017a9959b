#include "solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace qda {

namespace {

Vec sigma1(double s) {
  Vec v(1);
  v << s;
  return v;
}

bool sigma_less(const Vec& a, const Vec& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

struct CandidateSet {
  std::vector<std::pair<double, double>> candidates;  // (sigma, phi)
  double sup = kNegInfinity;
};

// Supremum bookkeeping for one interval of a piecewise-monotone phi: the sup
// is realized either at a candidate point (closed endpoint, interior
// stationary point, isolated point) or as a one-sided/tail limit.
CandidateSet scan_interval(const ProblemInstance& inst, const Interval& iv,
                           const std::vector<double>& stationary, double psi_inf) {
  CandidateSet out;
  auto add_candidate = [&](double s) {
    auto v = try_phi_psi(inst, s);
    if (!v) return;
    out.candidates.push_back({s, v->first});
    out.sup = std::max(out.sup, v->first);
  };

  if (iv.lo_closed) add_candidate(iv.lo);
  if (!iv.unbounded_above() && iv.hi_closed && iv.hi != iv.lo) add_candidate(iv.hi);
  for (double r : stationary)
    if (r > iv.lo && (iv.unbounded_above() || r < iv.hi)) add_candidate(r);

  if (!iv.lo_closed) {
    LimitValue lim = phi_limit_at(inst, iv.lo, +1);
    if (lim.kind == LimitKind::PlusInfinity)
      out.sup = kPlusInfinity;
    else if (lim.kind == LimitKind::Finite && std::isfinite(lim.value))
      out.sup = std::max(out.sup, lim.value);
  }
  if (iv.unbounded_above()) {
    double slope_scale = 1e-12 * (1.0 + std::abs(psi_inf));
    if (psi_inf > slope_scale) {
      out.sup = kPlusInfinity;
    } else if (psi_inf >= -slope_scale) {
      if (auto v = try_phi_psi(inst, 1e8)) out.sup = std::max(out.sup, v->first);
    }
    // negative tail slope: phi decreases toward -infinity, nothing to add
  } else if (!iv.hi_closed) {
    LimitValue lim = phi_limit_at(inst, iv.hi, -1);
    if (lim.kind == LimitKind::PlusInfinity)
      out.sup = kPlusInfinity;
    else if (lim.kind == LimitKind::Finite && std::isfinite(lim.value))
      out.sup = std::max(out.sup, lim.value);
  }
  return out;
}

DualSolveResult assemble_exact(const ProblemInstance& inst,
                               const std::vector<CandidateSet>& cells) {
  DualSolveResult res;
  res.method = SolveMethod::Exact1D;

  double best_candidate = kNegInfinity;
  double sup = kNegInfinity;
  for (const CandidateSet& cs : cells) {
    sup = std::max(sup, cs.sup);
    for (const auto& [s, v] : cs.candidates) best_candidate = std::max(best_candidate, v);
  }
  res.sup_estimate = sup;
  if (!std::isfinite(sup)) {
    res.attained = false;  // grows without bound toward a puncture or the tail
    return res;
  }
  res.attained = best_candidate >= sup - 1e-9 * (1.0 + std::abs(sup));
  if (!res.attained) return res;

  std::vector<std::pair<double, double>> picked;
  for (const CandidateSet& cs : cells)
    for (const auto& cand : cs.candidates)
      if (cand.second >= best_candidate - 1e-8) picked.push_back(cand);
  std::sort(picked.begin(), picked.end());
  for (const auto& [s, v] : picked) {
    if (!res.maximizers.empty() &&
        std::abs(s - res.maximizers.back().sigma[0]) <= 1e-10 * (1.0 + std::abs(s)))
      continue;
    Maximizer mx;
    mx.sigma = sigma1(s);
    mx.value = v;
    mx.in_S_plus = classify(inst, mx.sigma).in_S_plus;
    res.maximizers.push_back(std::move(mx));
  }
  std::stable_sort(res.maximizers.begin(), res.maximizers.end(),
                   [](const Maximizer& a, const Maximizer& b) {
                     if (a.value != b.value) return a.value > b.value;
                     return sigma_less(a.sigma, b.sigma);
                   });
  return res;
}

}  // namespace

DualSolveResult maximize_over_Y_1d(const ProblemInstance& inst) {
  Region1DContext ctx = analyze_region_1d(inst);
  IntervalUnion Y = y_regions_from_context(inst, ctx);
  if (Y.empty()) throw EmptyYError("the dual feasible region Y is empty");

  std::vector<CandidateSet> cells;
  for (const Interval& iv : Y.intervals())
    cells.push_back(scan_interval(inst, iv, ctx.roots, ctx.psi_inf));
  return assemble_exact(inst, cells);
}

namespace {

DualSolveResult maximize_over_S_plus_1d(const ProblemInstance& inst) {
  Region1DContext ctx = analyze_region_1d(inst);
  const IntervalUnion& sp = ctx.regions.S_plus;
  if (sp.empty())
    throw EmptySPlusError("S_plus is empty: G(sigma) is never positive definite");
  std::vector<CandidateSet> cells;
  for (const Interval& iv : sp.intervals())
    cells.push_back(scan_interval(inst, iv, ctx.roots, ctx.psi_inf));
  return assemble_exact(inst, cells);
}

struct LocalBest {
  Vec sigma;
  double value = kNegInfinity;
  bool capped = false;
};

// projected gradient ascent with backtracking; membership is delegated so the
// same loop serves Y and S_plus
LocalBest ascend(const ProblemInstance& inst, Vec sigma,
                 const std::function<bool(const Vec&)>& member) {
  constexpr double kSigmaCap = 1e6;
  LocalBest best;
  DualEvaluation ev = evaluate_dual(inst, sigma);
  best.sigma = sigma;
  best.value = ev.value;
  const double mu = 1e-9 * (1.0 + std::abs(ev.value));  // mild conditioning tiebreak

  double alpha = 1.0;
  for (int it = 0; it < 400; ++it) {
    Vec pg = ev.gradient;
    for (int i = 0; i < pg.size(); ++i)
      if (sigma[i] <= 0.0 && pg[i] < 0.0) pg[i] = 0.0;
    if (pg.lpNorm<Eigen::Infinity>() <= 1e-11 * (1.0 + std::abs(ev.value))) break;

    alpha = std::min(alpha * 4.0, 1e6 / (pg.norm() + 1e-300));
    bool stepped = false;
    while (alpha > 1e-18) {
      Vec trial = (sigma + alpha * ev.gradient).cwiseMax(0.0);
      if ((trial - sigma).lpNorm<Eigen::Infinity>() == 0.0) {
        alpha *= 0.5;
        continue;
      }
      if (member(trial)) {
        DualEvaluation evt = evaluate_dual(inst, trial);
        double before = ev.value + mu * std::log(ev.rcond);
        double after = evt.value + mu * std::log(evt.rcond);
        if (after > before + 1e-12 * (1.0 + std::abs(before))) {
          sigma = std::move(trial);
          ev = std::move(evt);
          stepped = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!stepped) break;
    if (ev.value > best.value) {
      best.sigma = sigma;
      best.value = ev.value;
    }
    if (sigma.lpNorm<Eigen::Infinity>() >= kSigmaCap) {
      best.capped = true;
      break;
    }
  }
  return best;
}

DualSolveResult multistart(const ProblemInstance& inst, int starts, std::uint64_t seed,
                           const std::function<bool(const Vec&)>& member,
                           bool over_S_plus) {
  if (starts < 1) throw InputError("multistart solver: starts must be positive");
  const int m = inst.m();

  std::vector<Vec> seeds;
  for (double v : {0.0, 1e-3, 0.1, 1.0, 3.0}) {
    Vec s = Vec::Constant(m, v);
    if (member(s)) seeds.push_back(std::move(s));
    if (static_cast<int>(seeds.size()) >= starts) break;
  }
  Rng rng(seed * 0x9e3779b97f4a7c15ULL + 0xB5297A4DULL);
  int budget = starts * 100;
  while (static_cast<int>(seeds.size()) < starts && budget-- > 0) {
    Vec s(m);
    for (int i = 0; i < m; ++i) s[i] = rng.uniform(0.0, 10.0);
    if (member(s)) seeds.push_back(std::move(s));
  }
  if (seeds.empty()) {
    if (over_S_plus)
      throw EmptySPlusError("no starting point found with G(sigma) positive definite");
    throw EmptyYError("no starting point found inside the dual feasible region Y");
  }

  std::vector<LocalBest> locals;
  for (const Vec& s : seeds) locals.push_back(ascend(inst, s, member));

  std::sort(locals.begin(), locals.end(), [](const LocalBest& a, const LocalBest& b) {
    if (a.value != b.value) return a.value > b.value;
    return sigma_less(a.sigma, b.sigma);
  });

  DualSolveResult res;
  res.method = SolveMethod::Multistart;
  res.sup_estimate = locals.front().value;
  if (locals.front().capped) {
    res.attained = false;  // ascent ran into the sigma cap still climbing
    return res;
  }
  res.attained = true;
  for (const LocalBest& lb : locals) {
    if (lb.value < locals.front().value - 1e-8) break;
    bool dup = false;
    for (const Maximizer& mx : res.maximizers)
      if ((lb.sigma - mx.sigma).lpNorm<Eigen::Infinity>() <= 1e-6) {
        dup = true;
        break;
      }
    if (dup) continue;
    Maximizer mx;
    mx.sigma = lb.sigma;
    mx.value = lb.value;
    mx.in_S_plus = classify(inst, lb.sigma).in_S_plus;
    res.maximizers.push_back(std::move(mx));
  }
  return res;
}

}  // namespace

DualSolveResult maximize_over_Y_multistart(const ProblemInstance& inst, int starts,
                                           std::uint64_t seed) {
  return multistart(
      inst, starts, seed, [&](const Vec& s) { return classify(inst, s).in_Y; }, false);
}

DualSolveResult maximize_over_Y(const ProblemInstance& inst, int starts,
                                std::uint64_t seed) {
  if (inst.m() == 1) return maximize_over_Y_1d(inst);
  return maximize_over_Y_multistart(inst, starts, seed);
}

DualSolveResult maximize_over_S_plus(const ProblemInstance& inst, int starts,
                                     std::uint64_t seed) {
  if (inst.m() == 1) return maximize_over_S_plus_1d(inst);
  return multistart(
      inst, starts, seed, [&](const Vec& s) { return classify(inst, s).in_S_plus; }, true);
}

}  // namespace qda
