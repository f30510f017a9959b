#pragma once

#include <string>
#include <vector>

#include "oracle.hpp"
#include "solver.hpp"

namespace qda {

enum class TheoremStatus { Verified, Falsified, HypothesisFailed, Inconclusive };

const char* theorem_status_name(TheoremStatus s);

// Strengthened positivity: A + sum_i Q_i positive definite with margin.
struct C1Result {
  bool holds = false;
  double min_eigenvalue = 0.0;
  double threshold = 0.0;
};
C1Result check_c1(const ProblemInstance& inst);

// Norm inequality per constraint k with D_k the symmetric PSD square root of
// Q_k:  ||D_k A^{-1} f|| > ||D_k^{-1} b_k|| + sqrt(||D_k^{-1} b_k||^2 + 2|c_k|)
struct C2Record {
  int k = 0;  // 1-based
  bool q_positive_definite = false;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};
struct C2Result {
  bool a_singular = false;  // the inequality is ill-posed in that case
  std::vector<C2Record> records;
  bool any_holds() const;
};
C2Result check_c2(const ProblemInstance& inst);

struct AuditOptions {
  std::uint64_t seed = 0;
  int starts = 32;
  int oracle_grid = 256;
  int polish_iters = 200;
  double value_tol = 1e-7;
};

// Claim 1: with sigma_bar maximizing the dual over Y and x_bar = x(sigma_bar),
// x_bar is a global primal minimizer and the optimal values agree.
struct Theorem1Verdict {
  TheoremStatus status = TheoremStatus::Inconclusive;
  std::string message;
  Vec sigma_bar, x_bar;  // empty unless the dual solve produced a maximizer
  double dual_value = 0.0;
  double primal_value = 0.0;
  double oracle_best = 0.0;
  double gap = 0.0;  // primal_value - oracle_best
  bool value_agreement = false;
};
Theorem1Verdict audit_theorem1(const ProblemInstance& inst, const AuditOptions& opts = {});

// Claim 2 (under the positivity and norm hypotheses): the dual maximizer is
// unique, nonzero, and lies in S_plus.
struct Theorem2Verdict {
  enum class Reason { None, NoMaximizerInSPlus, MultipleMaximizers, ZeroMaximizer };
  TheoremStatus status = TheoremStatus::Inconclusive;
  Reason reason = Reason::None;
  std::string message;
  std::vector<Vec> maximizers;
  std::vector<bool> maximizer_in_S_plus;
};
Theorem2Verdict audit_theorem2(const ProblemInstance& inst, const AuditOptions& opts = {});

// Side claim: with f != 0 the global primal minimizer is unique. The oracle
// counts distinct minimizer clusters.
struct UniquenessVerdict {
  enum class Status { Consistent, Counterexample, NotApplicable };
  Status status = Status::NotApplicable;
  int minimizer_count = 0;
  std::vector<Vec> minimizers;
  std::string message;
};
UniquenessVerdict audit_uniqueness_remark(const ProblemInstance& inst,
                                          const AuditOptions& opts = {});

struct AuditReport {
  int n = 0, m = 0;
  std::vector<Violation> validation;
  SlaterResult slater;
  C1Result c1;
  C2Result c2;
  Theorem1Verdict theorem1;
  Theorem2Verdict theorem2;
  UniquenessVerdict uniqueness;
  std::string solve_method;  // "exact-1d" or "multistart"
  AuditOptions options;
};

AuditReport full_audit(const ProblemInstance& inst, const AuditOptions& opts = {});

// Deterministic serialization: stable key order, 17 significant digits.
std::string report_to_json(const AuditReport& report);
std::string report_summary(const AuditReport& report);

// 0 all audited claims hold, 2 hypothesis failure or inconclusive only,
// 3 at least one claim falsified.
int report_exit_code(const AuditReport& report);

}  // namespace qda
