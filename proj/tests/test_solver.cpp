#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "solver.hpp"
#include "support.hpp"

using namespace qda;

static constexpr double kSigma2 = 0.0102632392949457565;
static constexpr double kPhiSigma2 = -12.979923246063117;

TEST_CASE("one dimensional instance: unique maximizer at zero") {
  DualSolveResult r = maximize_over_Y_1d(builtin_example(2));
  CHECK(r.attained);
  CHECK(r.method == SolveMethod::Exact1D);
  REQUIRE(r.maximizers.size() == 1);
  CHECK(r.maximizers[0].sigma[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.maximizers[0].value == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(!r.maximizers[0].in_S_plus);  // G(0) = -2
  CHECK(r.sup_estimate == doctest::Approx(0.25));
}

TEST_CASE("two dimensional instance: maximizer on the indefinite branch") {
  DualSolveResult r = maximize_over_Y_1d(builtin_example(3));
  CHECK(r.attained);
  REQUIRE(r.maximizers.size() == 1);
  CHECK(r.maximizers[0].sigma[0] == doctest::Approx(kSigma2).epsilon(1e-10));
  CHECK(r.maximizers[0].value == doctest::Approx(kPhiSigma2).epsilon(1e-12));
  CHECK(!r.maximizers[0].in_S_plus);
}

TEST_CASE("flat dual: maximizer at the left endpoint") {
  // A=-2,f=-2,Q=2,b=-2,c=0: x(sigma)=1 identically, phi = 1 - sigma
  DualSolveResult r = maximize_over_Y_1d(builtin_example(1));
  CHECK(r.attained);
  REQUIRE(r.maximizers.size() == 1);
  CHECK(r.maximizers[0].sigma[0] == doctest::Approx(0.0));
  CHECK(r.maximizers[0].value == doctest::Approx(1.0));
}

TEST_CASE("unbounded supremum near a puncture inside Y") {
  // g(x) = 1 - x^2/2 <= 0, G = 1 - sigma: phi -> +inf as sigma -> 1+
  Mat A = Mat::Identity(1, 1);
  Vec f = Vec::Ones(1);
  Constraint c;
  c.Q = -Mat::Identity(1, 1);
  c.b = Vec::Zero(1);
  c.c = -1.0;
  ProblemInstance inst(A, f, {c});
  DualSolveResult r = maximize_over_Y_1d(inst);
  CHECK(!r.attained);
  CHECK(r.maximizers.empty());
  CHECK(std::isinf(r.sup_estimate));
  CHECK(r.sup_estimate > 0);
}

TEST_CASE("empty Y raises the typed error") {
  // only feasible point is x = 0 but x(sigma) never reaches it
  Mat A = -2.0 * Mat::Identity(1, 1);
  Vec f = Vec::Ones(1);
  Constraint c;
  c.Q = Mat::Identity(1, 1);
  c.b = Vec::Zero(1);
  c.c = 0.0;
  ProblemInstance inst(A, f, {c});
  CHECK_THROWS_AS(maximize_over_Y_1d(inst), EmptyYError);
}

TEST_CASE("isolated tangential point can carry the maximum") {
  // c = 32 variant: Y near 1/8 is the single point sigma = 1/8
  ProblemInstance e3 = builtin_example(3);
  Constraint c = e3.constraints[0];
  c.c = 32.0;
  ProblemInstance touching(e3.A, e3.f, {c});
  DualSolveResult r = maximize_over_Y_1d(touching);
  CHECK(r.attained);
  REQUIRE(!r.maximizers.empty());
  // phi(1/8) = -1/2(18 - 2) - 32/8 = -12; the tail branch tops out lower
  CHECK(r.maximizers[0].sigma[0] == doctest::Approx(0.125).epsilon(1e-7));
  CHECK(r.maximizers[0].value == doctest::Approx(-12.0).epsilon(1e-6));
}

TEST_CASE("maximization over the positive definite region") {
  // S_plus = (2, inf) for the one dimensional instance; max at sigma = 3
  DualSolveResult r = maximize_over_S_plus(builtin_example(2));
  CHECK(r.attained);
  REQUIRE(r.maximizers.size() == 1);
  CHECK(r.maximizers[0].sigma[0] == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(r.maximizers[0].value == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(r.maximizers[0].in_S_plus);

  // G = -1 - sigma is never positive definite
  Mat A = -Mat::Identity(1, 1);
  Vec f = Vec::Ones(1);
  Constraint c;
  c.Q = -Mat::Identity(1, 1);
  c.b = Vec::Zero(1);
  c.c = 1.0;
  ProblemInstance never_pd(A, f, {c});
  CHECK_THROWS_AS(maximize_over_S_plus(never_pd), EmptySPlusError);
}

TEST_CASE("dispatch picks the exact path for one constraint") {
  DualSolveResult r = maximize_over_Y(builtin_example(3));
  CHECK(r.method == SolveMethod::Exact1D);
}

TEST_CASE("multistart reaches the exact answer on the builtins") {
  for (int k : {1, 2, 3}) {
    DualSolveResult exact = maximize_over_Y_1d(builtin_example(k));
    DualSolveResult ms = maximize_over_Y_multistart(builtin_example(k), 32, 0);
    REQUIRE(ms.attained);
    CHECK(ms.method == SolveMethod::Multistart);
    CHECK(std::abs(ms.maximizers[0].value - exact.maximizers[0].value) <= 1e-6);
  }
}

TEST_CASE("multistart is deterministic for a fixed seed") {
  ProblemInstance e3 = builtin_example(3);
  DualSolveResult a = maximize_over_Y_multistart(e3, 16, 7);
  DualSolveResult b = maximize_over_Y_multistart(e3, 16, 7);
  REQUIRE(a.maximizers.size() == b.maximizers.size());
  CHECK(a.maximizers[0].value == b.maximizers[0].value);
  CHECK(a.maximizers[0].sigma[0] == b.maximizers[0].sigma[0]);
}

TEST_CASE("multistart never exceeds the exact supremum") {
  Rng rng(29);
  int done = 0;
  for (int attempts = 0; done < 50 && attempts < 600; ++attempts) {
    ProblemInstance inst =
        testsupport::random_instance(rng, 1 + static_cast<int>(rng.next_u64() % 3), 1);
    try {
      DualSolveResult exact = maximize_over_Y_1d(inst);
      DualSolveResult ms = maximize_over_Y_multistart(inst, 24, 3);
      if (ms.attained)
        CHECK(ms.maximizers[0].value <= exact.sup_estimate + 1e-7 * (1.0 + std::abs(exact.sup_estimate)));
      ++done;
    } catch (const EmptyYError&) {
    } catch (const SingularGError&) {
    }
  }
  CHECK(done >= 30);
}

TEST_CASE("exact and multistart agree on convex instances") {
  Rng rng(31);
  for (int t = 0; t < 25; ++t) {
    ProblemInstance inst =
        testsupport::random_convex_instance(rng, 1 + static_cast<int>(rng.next_u64() % 3), 1);
    DualSolveResult exact = maximize_over_Y_1d(inst);
    DualSolveResult ms = maximize_over_Y_multistart(inst, 24, 5);
    REQUIRE(exact.attained);
    REQUIRE(ms.attained);
    CHECK(std::abs(ms.maximizers[0].value - exact.maximizers[0].value) <=
          1e-6 * (1.0 + std::abs(exact.maximizers[0].value)));
  }
}

TEST_CASE("multistart handles two constraints") {
  Rng rng(37);
  for (int t = 0; t < 10; ++t) {
    ProblemInstance inst = testsupport::random_convex_instance(rng, 2, 2);
    DualSolveResult r = maximize_over_Y(inst, 32, 0);
    REQUIRE(r.attained);
    CHECK(r.method == SolveMethod::Multistart);
    // convex case: dual optimum equals the primal optimum
    OracleResult oracle = global_min_brute(inst, 64);
    CHECK(std::abs(r.maximizers[0].value - oracle.best_value) <=
          1e-4 * (1.0 + std::abs(oracle.best_value)));
  }
}
