#include "audit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json_util.hpp"

namespace qda {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

}  // namespace

const char* theorem_status_name(TheoremStatus s) {
  switch (s) {
    case TheoremStatus::Verified:
      return "verified";
    case TheoremStatus::Falsified:
      return "falsified";
    case TheoremStatus::HypothesisFailed:
      return "hypothesis_failed";
    default:
      return "inconclusive";
  }
}

C1Result check_c1(const ProblemInstance& inst) {
  Mat M = inst.A;
  for (const Constraint& con : inst.constraints) M += con.Q;
  Eigen::SelfAdjointEigenSolver<Mat> es(M, Eigen::EigenvaluesOnly);
  C1Result out;
  out.min_eigenvalue = es.eigenvalues().minCoeff();
  out.threshold = 1e-10 * (1.0 + es.eigenvalues().cwiseAbs().maxCoeff());
  out.holds = out.min_eigenvalue > out.threshold;
  return out;
}

bool C2Result::any_holds() const {
  if (a_singular) return false;
  for (const C2Record& r : records)
    if (r.holds) return true;
  return false;
}

C2Result check_c2(const ProblemInstance& inst) {
  C2Result out;
  Eigen::SelfAdjointEigenSolver<Mat> aes(inst.A);
  double amax = aes.eigenvalues().cwiseAbs().maxCoeff();
  double amin = aes.eigenvalues().cwiseAbs().minCoeff();
  out.a_singular = amax <= 0.0 || amin / amax <= 1e-12;

  Vec ainv_f;
  if (!out.a_singular) {
    Vec w = aes.eigenvectors().transpose() * inst.f;
    w.array() /= aes.eigenvalues().array();
    ainv_f = aes.eigenvectors() * w;
  }

  for (int k = 0; k < inst.m(); ++k) {
    const Constraint& con = inst.constraints[k];
    C2Record rec;
    rec.k = k + 1;
    Eigen::SelfAdjointEigenSolver<Mat> qes(con.Q);
    double qnorm = qes.eigenvalues().cwiseAbs().maxCoeff();
    rec.q_positive_definite = qes.eigenvalues().minCoeff() > 1e-10 * (1.0 + qnorm);
    if (!rec.q_positive_definite || out.a_singular) {
      rec.lhs = kNaN;
      rec.rhs = kNaN;
      rec.holds = false;
      out.records.push_back(rec);
      continue;
    }
    Mat D = qes.operatorSqrt();
    Mat Dinv = qes.operatorInverseSqrt();
    rec.lhs = (D * ainv_f).norm();
    double db = (Dinv * con.b).norm();
    rec.rhs = db + std::sqrt(db * db + 2.0 * std::abs(con.c));
    rec.holds = rec.lhs > rec.rhs;
    out.records.push_back(rec);
  }
  return out;
}

namespace {

DualSolveResult solve_dual_over_Y(const ProblemInstance& inst, const AuditOptions& opts) {
  if (inst.m() == 1) return maximize_over_Y_1d(inst);
  return maximize_over_Y_multistart(inst, opts.starts, opts.seed);
}

OracleOptions oracle_options(const AuditOptions& opts) {
  OracleOptions o;
  o.grid_points_per_axis = opts.oracle_grid;
  o.polish_iters = opts.polish_iters;
  o.value_tol = opts.value_tol;
  return o;
}

}  // namespace

Theorem1Verdict audit_theorem1(const ProblemInstance& inst, const AuditOptions& opts) {
  Theorem1Verdict out;
  out.dual_value = out.primal_value = out.oracle_best = out.gap = kNaN;

  DualSolveResult dual;
  try {
    dual = solve_dual_over_Y(inst, opts);
  } catch (const EmptyYError& e) {
    out.status = TheoremStatus::HypothesisFailed;
    out.message = std::string("dual feasible region Y is empty (") + e.what() + ")";
    return out;
  }
  if (!dual.attained || dual.maximizers.empty()) {
    out.status = TheoremStatus::HypothesisFailed;
    out.message = "dual supremum over Y is not attained (sup estimate " +
                  fmt("%.6g", dual.sup_estimate) + ")";
    return out;
  }

  const Maximizer& top = dual.maximizers.front();
  out.sigma_bar = top.sigma;
  out.dual_value = top.value;
  out.x_bar = recover_x(inst, top.sigma);
  out.primal_value = objective_value(inst, out.x_bar);
  out.value_agreement = std::abs(out.primal_value - out.dual_value) <= 1e-6;

  OracleResult orc;
  try {
    orc = global_min_brute(inst, oracle_options(opts));
  } catch (const Error& e) {
    out.status = TheoremStatus::Inconclusive;
    out.message = std::string("oracle unavailable: ") + e.what();
    return out;
  }
  out.oracle_best = orc.best_value;
  out.gap = out.primal_value - orc.best_value;

  bool global = out.gap <= 1e-6;
  if (global && out.value_agreement) {
    out.status = TheoremStatus::Verified;
    out.message = "recovered candidate attains the brute-force minimum and the "
                  "optimal values agree";
  } else {
    out.status = TheoremStatus::Falsified;
    if (!global)
      out.message = "recovered candidate is not a global minimizer (gap: " +
                    fmt("%.6g", out.gap) + ")";
    else
      out.message = "optimal values disagree (difference: " +
                    fmt("%.6g", out.primal_value - out.dual_value) + ")";
  }
  return out;
}

Theorem2Verdict audit_theorem2(const ProblemInstance& inst, const AuditOptions& opts) {
  Theorem2Verdict out;

  C1Result c1 = check_c1(inst);
  if (!c1.holds) {
    out.status = TheoremStatus::HypothesisFailed;
    out.message = "positivity hypothesis fails: min eig(A + sum Q_i) = " +
                  fmt("%.6g", c1.min_eigenvalue);
    return out;
  }
  C2Result c2 = check_c2(inst);
  if (c2.a_singular) {
    out.status = TheoremStatus::HypothesisFailed;
    out.message = "norm hypothesis is ill-posed: A is numerically singular";
    return out;
  }
  if (!c2.any_holds()) {
    out.status = TheoremStatus::HypothesisFailed;
    out.message = "norm hypothesis fails for every constraint";
    return out;
  }

  DualSolveResult dual;
  try {
    dual = solve_dual_over_Y(inst, opts);
  } catch (const EmptyYError& e) {
    out.status = TheoremStatus::HypothesisFailed;
    out.message = std::string("dual feasible region Y is empty (") + e.what() + ")";
    return out;
  }
  if (!dual.attained || dual.maximizers.empty()) {
    out.status = TheoremStatus::Falsified;
    out.reason = Theorem2Verdict::Reason::NoMaximizerInSPlus;
    out.message = "maximizer not in S_plus: dual supremum over Y is not attained";
    return out;
  }

  for (const Maximizer& mx : dual.maximizers) {
    out.maximizers.push_back(mx.sigma);
    out.maximizer_in_S_plus.push_back(mx.in_S_plus);
  }

  if (dual.maximizers.size() > 1) {
    out.status = TheoremStatus::Falsified;
    out.reason = Theorem2Verdict::Reason::MultipleMaximizers;
    out.message =
        "multiple dual maximizers within tolerance (" +
        std::to_string(dual.maximizers.size()) + " found)";
    return out;
  }

  const Maximizer& top = dual.maximizers.front();
  if (!top.in_S_plus) {
    std::string sig;
    for (int i = 0; i < top.sigma.size(); ++i)
      sig += (i ? ", " : "") + fmt("%.9g", top.sigma[i]);
    out.status = TheoremStatus::Falsified;
    out.reason = Theorem2Verdict::Reason::NoMaximizerInSPlus;
    out.message = "maximizer not in S_plus (sigma = " + sig + ")";
    return out;
  }
  if (top.sigma.lpNorm<Eigen::Infinity>() <= 1e-9) {
    out.status = TheoremStatus::Falsified;
    out.reason = Theorem2Verdict::Reason::ZeroMaximizer;
    out.message = "maximizer is zero";
    return out;
  }
  out.status = TheoremStatus::Verified;
  out.message = "unique nonzero dual maximizer lies in S_plus";
  return out;
}

UniquenessVerdict audit_uniqueness_remark(const ProblemInstance& inst,
                                          const AuditOptions& opts) {
  UniquenessVerdict out;
  if (inst.f.norm() == 0.0) {
    out.status = UniquenessVerdict::Status::NotApplicable;
    out.message = "f is zero: the uniqueness claim does not apply";
    return out;
  }
  OracleResult orc;
  try {
    orc = global_min_brute(inst, oracle_options(opts));
  } catch (const Error& e) {
    out.status = UniquenessVerdict::Status::NotApplicable;
    out.message = std::string("oracle unavailable: ") + e.what();
    return out;
  }
  out.minimizer_count = static_cast<int>(orc.minimizers.size());
  out.minimizers = orc.minimizers;
  if (out.minimizer_count >= 2) {
    out.status = UniquenessVerdict::Status::Counterexample;
    out.message = "brute-force search found " + std::to_string(out.minimizer_count) +
                  " distinct global minimizer clusters";
  } else {
    out.status = UniquenessVerdict::Status::Consistent;
    out.message = "brute-force search found a single global minimizer cluster";
  }
  return out;
}

AuditReport full_audit(const ProblemInstance& inst, const AuditOptions& opts) {
  AuditReport rep;
  rep.n = inst.n();
  rep.m = inst.m();
  rep.options = opts;
  rep.solve_method = inst.m() == 1 ? "exact-1d" : "multistart";
  rep.validation = validate(inst);
  rep.slater = slater_check(inst);
  rep.c1 = check_c1(inst);
  rep.c2 = check_c2(inst);

  try {
    rep.theorem1 = audit_theorem1(inst, opts);
  } catch (const Error& e) {
    rep.theorem1 = Theorem1Verdict{};
    rep.theorem1.status = TheoremStatus::Inconclusive;
    rep.theorem1.message = std::string("audit aborted: ") + e.what();
  }
  try {
    rep.theorem2 = audit_theorem2(inst, opts);
  } catch (const Error& e) {
    rep.theorem2 = Theorem2Verdict{};
    rep.theorem2.status = TheoremStatus::Inconclusive;
    rep.theorem2.message = std::string("audit aborted: ") + e.what();
  }
  try {
    rep.uniqueness = audit_uniqueness_remark(inst, opts);
  } catch (const Error& e) {
    rep.uniqueness = UniquenessVerdict{};
    rep.uniqueness.status = UniquenessVerdict::Status::NotApplicable;
    rep.uniqueness.message = std::string("audit aborted: ") + e.what();
  }
  return rep;
}

namespace {

OrderedJson vec_to_json(const Vec& v) {
  if (v.size() == 0) return nullptr;
  OrderedJson arr = OrderedJson::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

}  // namespace

std::string report_to_json(const AuditReport& rep) {
  OrderedJson doc;
  doc["report_version"] = "1";
  {
    OrderedJson inst;
    inst["n"] = rep.n;
    inst["m"] = rep.m;
    doc["instance"] = std::move(inst);
  }
  {
    OrderedJson arr = OrderedJson::array();
    for (const Violation& v : rep.validation) {
      OrderedJson vj;
      vj["field"] = v.field;
      vj["message"] = v.message;
      vj["measured"] = v.measured;
      arr.push_back(std::move(vj));
    }
    doc["validation"] = std::move(arr);
  }
  {
    OrderedJson sj;
    sj["found"] = rep.slater.found;
    sj["x0"] = rep.slater.found ? vec_to_json(rep.slater.x0) : OrderedJson(nullptr);
    if (rep.slater.found)
      sj["margin"] = rep.slater.margin;
    else
      sj["margin"] = nullptr;
    doc["slater"] = std::move(sj);
  }
  {
    OrderedJson cj;
    cj["holds"] = rep.c1.holds;
    cj["min_eigenvalue"] = rep.c1.min_eigenvalue;
    cj["threshold"] = rep.c1.threshold;
    doc["condition_positivity"] = std::move(cj);
  }
  {
    OrderedJson cj;
    cj["a_singular"] = rep.c2.a_singular;
    cj["any_holds"] = rep.c2.any_holds();
    OrderedJson arr = OrderedJson::array();
    for (const C2Record& r : rep.c2.records) {
      OrderedJson rj;
      rj["k"] = r.k;
      rj["q_positive_definite"] = r.q_positive_definite;
      rj["lhs"] = r.lhs;
      rj["rhs"] = r.rhs;
      rj["holds"] = r.holds;
      arr.push_back(std::move(rj));
    }
    cj["per_constraint"] = std::move(arr);
    doc["condition_norm"] = std::move(cj);
  }
  {
    const Theorem1Verdict& t = rep.theorem1;
    OrderedJson tj;
    tj["status"] = theorem_status_name(t.status);
    tj["message"] = t.message;
    tj["sigma"] = vec_to_json(t.sigma_bar);
    tj["x"] = vec_to_json(t.x_bar);
    tj["dual_value"] = t.dual_value;
    tj["primal_value"] = t.primal_value;
    tj["oracle_best"] = t.oracle_best;
    tj["gap"] = t.gap;
    tj["value_agreement"] = t.value_agreement;
    doc["theorem1"] = std::move(tj);
  }
  {
    const Theorem2Verdict& t = rep.theorem2;
    OrderedJson tj;
    tj["status"] = theorem_status_name(t.status);
    const char* reason = "none";
    switch (t.reason) {
      case Theorem2Verdict::Reason::NoMaximizerInSPlus:
        reason = "no_maximizer_in_S_plus";
        break;
      case Theorem2Verdict::Reason::MultipleMaximizers:
        reason = "multiple_maximizers";
        break;
      case Theorem2Verdict::Reason::ZeroMaximizer:
        reason = "zero_maximizer";
        break;
      default:
        break;
    }
    tj["reason"] = reason;
    tj["message"] = t.message;
    OrderedJson arr = OrderedJson::array();
    for (const Vec& s : t.maximizers) arr.push_back(vec_to_json(s));
    tj["maximizers"] = std::move(arr);
    OrderedJson flags = OrderedJson::array();
    for (bool b : t.maximizer_in_S_plus) flags.push_back(b);
    tj["in_S_plus"] = std::move(flags);
    doc["theorem2"] = std::move(tj);
  }
  {
    const UniquenessVerdict& u = rep.uniqueness;
    OrderedJson uj;
    const char* status = "not_applicable";
    if (u.status == UniquenessVerdict::Status::Consistent) status = "consistent";
    if (u.status == UniquenessVerdict::Status::Counterexample) status = "counterexample";
    uj["status"] = status;
    uj["minimizer_count"] = u.minimizer_count;
    OrderedJson arr = OrderedJson::array();
    for (const Vec& x : u.minimizers) arr.push_back(vec_to_json(x));
    uj["minimizers"] = std::move(arr);
    uj["message"] = u.message;
    doc["uniqueness"] = std::move(uj);
  }
  doc["solve_method"] = rep.solve_method;
  {
    OrderedJson oj;
    oj["seed"] = rep.options.seed;
    oj["starts"] = rep.options.starts;
    oj["oracle_grid"] = rep.options.oracle_grid;
    oj["polish_iters"] = rep.options.polish_iters;
    oj["value_tol"] = rep.options.value_tol;
    doc["options"] = std::move(oj);
  }
  return dump_json(doc);
}

namespace {

std::string status_upper(TheoremStatus s) {
  switch (s) {
    case TheoremStatus::Verified:
      return "VERIFIED";
    case TheoremStatus::Falsified:
      return "FALSIFIED";
    case TheoremStatus::HypothesisFailed:
      return "HYPOTHESIS_FAILED";
    default:
      return "INCONCLUSIVE";
  }
}

}  // namespace

std::string report_summary(const AuditReport& rep) {
  std::string out;
  out += "instance: n=" + std::to_string(rep.n) + " m=" + std::to_string(rep.m) +
         " (dual solve: " + rep.solve_method + ")\n";
  if (rep.validation.empty()) {
    out += "validation: ok\n";
  } else {
    out += "validation: " + std::to_string(rep.validation.size()) + " violation(s)\n";
    for (const Violation& v : rep.validation)
      out += "  - " + v.field + ": " + v.message + " (measured " +
             fmt("%.6g", v.measured) + ")\n";
  }
  if (rep.slater.found)
    out += "interior point: found (margin " + fmt("%.6g", rep.slater.margin) + ")\n";
  else
    out += "interior point: not found (inconclusive)\n";
  out += std::string("positivity condition (A + sum Q_i > 0): ") +
         (rep.c1.holds ? "holds" : "fails") + " (min eigenvalue " +
         fmt("%.6g", rep.c1.min_eigenvalue) + ")\n";
  if (rep.c2.a_singular) {
    out += "norm condition: ill-posed (A singular)\n";
  } else {
    std::string ks;
    for (const C2Record& r : rep.c2.records)
      if (r.holds) ks += (ks.empty() ? "" : ",") + std::to_string(r.k);
    out += std::string("norm condition: ") +
           (rep.c2.any_holds() ? "holds for k=" + ks : "fails for every constraint") +
           "\n";
  }
  out += "theorem1: " + status_upper(rep.theorem1.status) + " (" + rep.theorem1.message +
         ")\n";
  out += "theorem2: " + status_upper(rep.theorem2.status) + " (" + rep.theorem2.message +
         ")\n";
  switch (rep.uniqueness.status) {
    case UniquenessVerdict::Status::Counterexample:
      out += "uniqueness remark: COUNTEREXAMPLE (" + rep.uniqueness.message + ")\n";
      break;
    case UniquenessVerdict::Status::Consistent:
      out += "uniqueness remark: consistent (" + rep.uniqueness.message + ")\n";
      break;
    default:
      out += "uniqueness remark: not applicable (" + rep.uniqueness.message + ")\n";
      break;
  }
  out += "exit: " + std::to_string(report_exit_code(rep)) + "\n";
  return out;
}

int report_exit_code(const AuditReport& rep) {
  bool falsified = rep.theorem1.status == TheoremStatus::Falsified ||
                   rep.theorem2.status == TheoremStatus::Falsified ||
                   rep.uniqueness.status == UniquenessVerdict::Status::Counterexample;
  if (falsified) return 3;
  bool degraded = rep.theorem1.status != TheoremStatus::Verified ||
                  rep.theorem2.status != TheoremStatus::Verified;
  if (degraded) return 2;
  return 0;
}

}  // namespace qda
