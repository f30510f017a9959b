#pragma once

#include <limits>
#include <optional>

#include "instance.hpp"

namespace qda {

// sigma < 0 componentwise puts the dual at -infinity by convention.
inline constexpr double kNegInfinity = -std::numeric_limits<double>::infinity();

// Conditioning gate: G(sigma) counts as numerically singular when
// min|eig| / max|eig| falls to 1e-12 or below.
inline constexpr double kRcondGate = 1e-12;

Mat g_matrix(const ProblemInstance& inst, const Vec& sigma);   // A + sum sigma_i Q_i
Vec f_vector(const ProblemInstance& inst, const Vec& sigma);   // f - sum sigma_i b_i

// min|eig|/max|eig| for a symmetric matrix (0 for the zero matrix).
double rcond_symmetric(const Mat& G);

// Solves G(sigma) x = F(sigma) through the spectral factorization, with one
// refinement pass. Throws SingularGError when the gate or the residual check
// fails.
Vec recover_x(const ProblemInstance& inst, const Vec& sigma);

// -1/2 F'G^{-1}F - c'sigma on the gated set; -infinity when any sigma_i < 0.
double dual_value(const ProblemInstance& inst, const Vec& sigma);

// Gradient of the dual: component i equals g_i(x(sigma)).
Vec dual_gradient(const ProblemInstance& inst, const Vec& sigma);

// 1/2 x'G(sigma)x - F(sigma)'x - c'sigma, defined for every (x, sigma).
double lagrangian_value(const ProblemInstance& inst, const Vec& x, const Vec& sigma);

struct DualEvaluation {
  double value = 0.0;
  Vec x;
  Vec gradient;
  double rcond = 0.0;
};

// One-stop evaluation used by the solvers; requires sigma >= 0 and the gate.
DualEvaluation evaluate_dual(const ProblemInstance& inst, const Vec& sigma);

struct DualPoint {
  Vec sigma;
  bool in_S = false;       // sigma >= 0 and G(sigma) passes the gate
  bool in_S_plus = false;  // additionally G(sigma) positive definite
  bool in_Y = false;       // additionally x(sigma) primal feasible
};

// Membership tolerances: positive definiteness demands min eig greater than
// pd_tol (default 1e-10 * (1 + ||G||)), feasibility uses feas_tol.
DualPoint classify(const ProblemInstance& inst, const Vec& sigma,
                   std::optional<double> pd_tol = std::nullopt,
                   std::optional<double> feas_tol = std::nullopt);

}  // namespace qda
