#pragma once

#include <optional>
#include <vector>

#include "dual.hpp"
#include "intervals.hpp"

namespace qda {

// Everything in this header handles the single-constraint case (m = 1) and
// throws MNotOneError otherwise. sigma is treated as a scalar throughout.

// phi / psi are the rational-function extensions of the dual value and its
// derivative: they are evaluated wherever G(sigma) passes the conditioning
// gate, including sigma < 0. Throws SingularGError at punctures.
double phi_scalar(const ProblemInstance& inst, double sigma);
double psi_scalar(const ProblemInstance& inst, double sigma);

// Nonnegative sigma where G(sigma) is singular, ascending, refined by
// bisection on the determinant sign when the crossing is simple.
std::vector<double> singularities(const ProblemInstance& inst);

struct SRegions {
  IntervalUnion S;       // sigma >= 0 minus the punctures
  IntervalUnion S_plus;  // cells of S where G is positive definite
};
SRegions s_regions(const ProblemInstance& inst);

// Sign-change roots of psi on S, ascending. Each reported root changes the
// sign of psi across it; tangential zeros are not included here.
std::vector<double> psi_roots(const ProblemInstance& inst, int samples_per_cell = 4096);

// Closure in S of { sigma in S : psi(sigma) <= 0 }, as a finite union of
// intervals plus isolated points where psi only touches zero from above.
IntervalUnion y_regions(const ProblemInstance& inst, int samples_per_cell = 4096);

enum class LimitKind { Finite, PlusInfinity, MinusInfinity };

struct LimitValue {
  LimitKind kind = LimitKind::Finite;
  double value = 0.0;  // meaningful for Finite; numeric estimate
};

struct SingularLimit {
  double sigma = 0.0;
  bool has_left = true;  // false when the puncture sits at sigma = 0
  LimitValue phi_left, phi_right, psi_left, psi_right;
};

struct VariationTable {
  std::vector<double> breakpoints;  // singularities, roots, tangential zeros
  // one entry per cell of [0, inf) cut at the breakpoints: -1, 0, +1
  std::vector<int> psi_sign;
  // phi/psi at each breakpoint; NaN where G is singular
  std::vector<double> phi_at_breakpoints;
  std::vector<double> psi_at_breakpoints;
  bool zero_in_S = false;
  double phi_at_zero = 0.0;  // NaN when 0 is a puncture
  double psi_at_zero = 0.0;
  std::vector<SingularLimit> singular_limits;
  double psi_limit_at_infinity = 0.0;  // analytic: -c_1 - 1/2 b_1' Q_1^{-1} b_1
  double psi_at_large_sigma = 0.0;     // numeric check at sigma = 1e8
  LimitValue phi_at_infinity;          // kind decided by the tail slope
};
VariationTable variation_table(const ProblemInstance& inst);

// CSV "sigma,phi,psi" over an inclusive uniform grid; "nan,nan" at punctures.
std::string curve_csv(const ProblemInstance& inst, double lo, double hi, int samples);

// Shared analysis context so the solver does not recompute the scan.
struct Region1DContext {
  std::vector<double> sing;
  SRegions regions;
  std::vector<double> roots;         // sign-change roots
  std::vector<double> touch_points;  // tangential zeros inside psi > 0 cells
  double psi_inf = 0.0;              // analytic tail value of psi (= tail slope of phi)
};
Region1DContext analyze_region_1d(const ProblemInstance& inst, int samples_per_cell = 4096);

// Y assembled from an existing context (avoids re-scanning).
IntervalUnion y_regions_from_context(const ProblemInstance& inst, const Region1DContext& ctx);

// phi/psi wherever the gate passes (any sign of sigma); nullopt at punctures.
std::optional<std::pair<double, double>> try_phi_psi(const ProblemInstance& inst, double sigma);

// One-sided numeric limit estimate of phi at a puncture (side = +1 from the
// right, -1 from the left).
LimitValue phi_limit_at(const ProblemInstance& inst, double sigma, int side);

}  // namespace qda
