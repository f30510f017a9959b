#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "audit.hpp"
#include "support.hpp"

using namespace qda;

namespace {
ProblemInstance verified_instance() {
  // min 1/2||x||^2 - 3 x_1 on the unit ball: both claims hold, maximizer
  // sigma = 2 with G(2) = 3I
  Mat A = Mat::Identity(2, 2);
  Vec f(2);
  f << 3.0, 0.0;
  Constraint c;
  c.Q = Mat::Identity(2, 2);
  c.b = Vec::Zero(2);
  c.c = 0.5;
  return ProblemInstance(A, f, {c});
}
}  // namespace

TEST_CASE("positivity condition values") {
  C1Result r = check_c1(builtin_example(3));  // A + Q = diag(5, 3)
  CHECK(r.holds);
  CHECK(r.min_eigenvalue == doctest::Approx(3.0).epsilon(1e-12));

  r = check_c1(builtin_example(1));  // -2 + 2 = 0
  CHECK(!r.holds);
  CHECK(r.min_eigenvalue == doctest::Approx(0.0));

  r = check_c1(builtin_example(2));  // -2 + 1 = -1
  CHECK(!r.holds);
  CHECK(r.min_eigenvalue == doctest::Approx(-1.0));
}

TEST_CASE("norm condition values on the two dimensional instance") {
  C2Result r = check_c2(builtin_example(3));
  CHECK(!r.a_singular);
  REQUIRE(r.records.size() == 1);
  CHECK(r.records[0].k == 1);
  CHECK(r.records[0].q_positive_definite);
  CHECK(r.records[0].lhs == doctest::Approx(4.0 * std::sqrt(7.0)).epsilon(1e-12));
  CHECK(r.records[0].rhs == doctest::Approx(2.0 * std::sqrt(26.0)).epsilon(1e-12));
  CHECK(r.records[0].holds);
  CHECK(r.any_holds());
}

TEST_CASE("norm condition is ill posed for singular A") {
  Mat A = Mat::Zero(2, 2);
  A(0, 0) = 1.0;  // rank 1
  Vec f = Vec::Ones(2);
  Constraint c;
  c.Q = Mat::Identity(2, 2);
  c.b = Vec::Zero(2);
  c.c = 1.0;
  C2Result r = check_c2(ProblemInstance(A, f, {c}));
  CHECK(r.a_singular);
  CHECK(!r.any_holds());
}

TEST_CASE("claim one verified on a convex instance") {
  Theorem1Verdict v = audit_theorem1(verified_instance());
  CHECK(v.status == TheoremStatus::Verified);
  CHECK(v.sigma_bar[0] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(v.x_bar[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(v.x_bar[1] == doctest::Approx(0.0));
  CHECK(v.dual_value == doctest::Approx(-2.5).epsilon(1e-10));
  CHECK(v.primal_value == doctest::Approx(-2.5).epsilon(1e-10));
  CHECK(std::abs(v.gap) <= 1e-7);
  CHECK(v.value_agreement);
}

TEST_CASE("claim one falsified on the builtins") {
  Theorem1Verdict v = audit_theorem1(builtin_example(1));
  CHECK(v.status == TheoremStatus::Falsified);
  CHECK(v.gap == doctest::Approx(1.0).epsilon(1e-7));

  v = audit_theorem1(builtin_example(2));
  CHECK(v.status == TheoremStatus::Falsified);
  CHECK(v.sigma_bar[0] == doctest::Approx(0.0));
  CHECK(v.x_bar[0] == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(v.dual_value == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(v.gap == doctest::Approx(2.25).epsilon(1e-7));
  CHECK(v.value_agreement);  // P(x_bar) equals the dual value; the gap is to the oracle

  v = audit_theorem1(builtin_example(3));
  CHECK(v.status == TheoremStatus::Falsified);
  CHECK(v.gap == doctest::Approx(11.233859748463301).epsilon(1e-9));
}

TEST_CASE("claim one on an instance with empty dual feasible region") {
  Mat A = -2.0 * Mat::Identity(1, 1);
  Vec f = Vec::Ones(1);
  Constraint c;
  c.Q = Mat::Identity(1, 1);
  c.b = Vec::Zero(1);
  c.c = 0.0;
  Theorem1Verdict v = audit_theorem1(ProblemInstance(A, f, {c}));
  CHECK(v.status == TheoremStatus::HypothesisFailed);
  CHECK(v.message.find("Y is empty") != std::string::npos);
}

TEST_CASE("claim two verified on a convex instance") {
  Theorem2Verdict v = audit_theorem2(verified_instance());
  CHECK(v.status == TheoremStatus::Verified);
  CHECK(v.reason == Theorem2Verdict::Reason::None);
  REQUIRE(v.maximizers.size() == 1);
  CHECK(v.maximizers[0][0] == doctest::Approx(2.0).epsilon(1e-9));
  REQUIRE(v.maximizer_in_S_plus.size() == 1);
  CHECK(v.maximizer_in_S_plus[0]);
}

TEST_CASE("claim two falsified on the two dimensional instance") {
  Theorem2Verdict v = audit_theorem2(builtin_example(3));
  CHECK(v.status == TheoremStatus::Falsified);
  CHECK(v.reason == Theorem2Verdict::Reason::NoMaximizerInSPlus);
  REQUIRE(v.maximizers.size() == 1);
  CHECK(v.maximizers[0][0] == doctest::Approx(0.0102632392949457565).epsilon(1e-9));
  CHECK(!v.maximizer_in_S_plus[0]);
  CHECK(v.message.find("maximizer not in S_plus") != std::string::npos);
}

TEST_CASE("claim two hypothesis failures on the one dimensional instances") {
  Theorem2Verdict v = audit_theorem2(builtin_example(1));
  CHECK(v.status == TheoremStatus::HypothesisFailed);
  CHECK(v.message.find("positivity") != std::string::npos);

  v = audit_theorem2(builtin_example(2));
  CHECK(v.status == TheoremStatus::HypothesisFailed);
}

TEST_CASE("norm condition forces the unconstrained minimizer outside constraint k") {
  // whenever the inequality holds for constraint k, g_k(A^{-1}f) > 0, so the
  // zero-maximizer rejection branch stays unreachable on well posed input
  Rng rng(53);
  int holds_seen = 0;
  for (int t = 0; t < 400; ++t) {
    ProblemInstance inst =
        testsupport::random_convex_instance(rng, 1 + static_cast<int>(rng.next_u64() % 3),
                                            1 + static_cast<int>(rng.next_u64() % 2));
    C2Result r = check_c2(inst);
    if (r.a_singular) continue;
    Vec x0 = inst.A.llt().solve(inst.f);
    ConstraintValues cv = constraint_values(inst, x0);
    for (const C2Record& rec : r.records) {
      if (!rec.holds) continue;
      ++holds_seen;
      CHECK(cv.g[rec.k - 1] > 0.0);
    }
  }
  CHECK(holds_seen > 10);  // the corpus must actually exercise the inequality
}

TEST_CASE("norm hypothesis failure is reported") {
  Mat A = Mat::Identity(1, 1);
  Vec f = Vec::Constant(1, 0.5);
  Constraint c;
  c.Q = Mat::Identity(1, 1);
  c.b = Vec::Constant(1, -2.0);
  c.c = 2.0;
  Theorem2Verdict v = audit_theorem2(ProblemInstance(A, f, {c}));
  CHECK(v.status == TheoremStatus::HypothesisFailed);
  CHECK(v.message.find("norm hypothesis") != std::string::npos);
}

TEST_CASE("uniqueness remark across the builtins") {
  UniquenessVerdict v = audit_uniqueness_remark(builtin_example(1));
  CHECK(v.status == UniquenessVerdict::Status::Counterexample);
  CHECK(v.minimizer_count == 2);

  v = audit_uniqueness_remark(builtin_example(2));
  CHECK(v.status == UniquenessVerdict::Status::Consistent);
  CHECK(v.minimizer_count == 1);

  v = audit_uniqueness_remark(builtin_example(3));
  CHECK(v.status == UniquenessVerdict::Status::Consistent);
  CHECK(v.minimizer_count == 1);
}

TEST_CASE("uniqueness remark does not apply when f is zero") {
  Mat A = Mat::Identity(1, 1);
  Vec f = Vec::Zero(1);
  Constraint c;
  c.Q = Mat::Identity(1, 1);
  c.b = Vec::Zero(1);
  c.c = 1.0;
  UniquenessVerdict v = audit_uniqueness_remark(ProblemInstance(A, f, {c}));
  CHECK(v.status == UniquenessVerdict::Status::NotApplicable);
}

TEST_CASE("full audit pulls the pieces together") {
  AuditReport rep = full_audit(builtin_example(3));
  CHECK(rep.n == 2);
  CHECK(rep.m == 1);
  CHECK(rep.validation.empty());
  CHECK(rep.slater.found);
  CHECK(rep.solve_method == "exact-1d");
  CHECK(rep.theorem1.status == TheoremStatus::Falsified);
  CHECK(rep.theorem2.status == TheoremStatus::Falsified);
  CHECK(rep.uniqueness.status == UniquenessVerdict::Status::Consistent);
  CHECK(report_exit_code(rep) == 3);

  AuditReport ok = full_audit(verified_instance());
  CHECK(ok.theorem1.status == TheoremStatus::Verified);
  CHECK(ok.theorem2.status == TheoremStatus::Verified);
  CHECK(ok.uniqueness.status == UniquenessVerdict::Status::Consistent);
  CHECK(report_exit_code(ok) == 0);
}

TEST_CASE("exit code two for hypothesis failures without falsification") {
  Mat A = -2.0 * Mat::Identity(1, 1);
  Vec f = Vec::Ones(1);
  Constraint c;
  c.Q = Mat::Identity(1, 1);
  c.b = Vec::Zero(1);
  c.c = 0.0;
  AuditReport rep = full_audit(ProblemInstance(A, f, {c}));
  CHECK(rep.theorem1.status == TheoremStatus::HypothesisFailed);
  CHECK(rep.theorem2.status == TheoremStatus::HypothesisFailed);
  CHECK(rep.uniqueness.status == UniquenessVerdict::Status::Consistent);
  CHECK(report_exit_code(rep) == 2);
}

TEST_CASE("report json is deterministic and carries the required keys") {
  AuditReport a = full_audit(builtin_example(2), AuditOptions{7, 32, 256, 200, 1e-7});
  AuditReport b = full_audit(builtin_example(2), AuditOptions{7, 32, 256, 200, 1e-7});
  std::string ja = report_to_json(a), jb = report_to_json(b);
  CHECK(ja == jb);
  for (const char* key :
       {"\"report_version\"", "\"instance\"", "\"validation\"", "\"slater\"",
        "\"condition_positivity\"", "\"condition_norm\"", "\"theorem1\"", "\"theorem2\"",
        "\"uniqueness\"", "\"solve_method\"", "\"options\""}) {
    CHECK(ja.find(key) != std::string::npos);
  }
  CHECK(ja.find("\"no_maximizer_in_S_plus\"") == std::string::npos);  // reason none here
}

TEST_CASE("summary text carries the verdict lines") {
  AuditReport rep = full_audit(builtin_example(3));
  std::string s = report_summary(rep);
  CHECK(s.find("theorem1: FALSIFIED") != std::string::npos);
  CHECK(s.find("theorem2: FALSIFIED") != std::string::npos);
  CHECK(s.find("maximizer not in S_plus") != std::string::npos);
  CHECK(s.find("exit: 3") != std::string::npos);

  rep = full_audit(builtin_example(2));
  s = report_summary(rep);
  CHECK(s.find("theorem1: FALSIFIED") != std::string::npos);
  CHECK(s.find("gap: 2.25") != std::string::npos);
}

TEST_CASE("claim verdicts on random convex instances") {
  Rng rng(47);
  AuditOptions opts;
  opts.oracle_grid = 64;
  for (int t = 0; t < 12; ++t) {
    ProblemInstance inst =
        testsupport::random_convex_instance(rng, 1 + static_cast<int>(rng.next_u64() % 2), 1);
    Theorem1Verdict v = audit_theorem1(inst, opts);
    CHECK(v.status == TheoremStatus::Verified);
  }
}
