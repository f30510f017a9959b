#include "dual.hpp"

#include <cmath>

namespace qda {

namespace {

void check_sigma_dim(const ProblemInstance& inst, const Vec& sigma) {
  if (sigma.size() != inst.m()) throw InputError("sigma has wrong dimension");
}

struct GFactor {
  Eigen::SelfAdjointEigenSolver<Mat> eig;
  double rcond = 0.0;

  explicit GFactor(const Mat& G) : eig(G) {
    const Vec& ev = eig.eigenvalues();
    double amax = ev.cwiseAbs().maxCoeff();
    double amin = ev.cwiseAbs().minCoeff();
    rcond = amax > 0 ? amin / amax : 0.0;
  }

  Vec solve(const Vec& rhs) const {
    const Mat& V = eig.eigenvectors();
    Vec w = V.transpose() * rhs;
    w.array() /= eig.eigenvalues().array();
    return V * w;
  }
};

Vec solve_gated(const Mat& G, const Vec& F, double* rcond_out) {
  GFactor fac(G);
  if (rcond_out) *rcond_out = fac.rcond;
  if (fac.rcond <= kRcondGate)
    throw SingularGError("G(sigma) is numerically singular (rcond <= 1e-12)");
  Vec x = fac.solve(F);
  x += fac.solve(F - G * x);  // one refinement pass
  double resid = (G * x - F).norm();
  if (!(resid <= 1e-9 * (1.0 + F.norm())))
    throw SingularGError("G(sigma) solve failed the residual check");
  return x;
}

}  // namespace

Mat g_matrix(const ProblemInstance& inst, const Vec& sigma) {
  check_sigma_dim(inst, sigma);
  Mat G = inst.A;
  for (int i = 0; i < inst.m(); ++i) G += sigma[i] * inst.constraints[i].Q;
  return G;
}

Vec f_vector(const ProblemInstance& inst, const Vec& sigma) {
  check_sigma_dim(inst, sigma);
  Vec F = inst.f;
  for (int i = 0; i < inst.m(); ++i) F -= sigma[i] * inst.constraints[i].b;
  return F;
}

double rcond_symmetric(const Mat& G) {
  return GFactor(G).rcond;
}

Vec recover_x(const ProblemInstance& inst, const Vec& sigma) {
  return solve_gated(g_matrix(inst, sigma), f_vector(inst, sigma), nullptr);
}

double dual_value(const ProblemInstance& inst, const Vec& sigma) {
  check_sigma_dim(inst, sigma);
  if ((sigma.array() < 0.0).any()) return kNegInfinity;
  Vec F = f_vector(inst, sigma);
  Vec x = solve_gated(g_matrix(inst, sigma), F, nullptr);
  double csum = 0.0;
  for (int i = 0; i < inst.m(); ++i) csum += sigma[i] * inst.constraints[i].c;
  return -0.5 * F.dot(x) - csum;
}

Vec dual_gradient(const ProblemInstance& inst, const Vec& sigma) {
  return constraint_values(inst, recover_x(inst, sigma)).g;
}

double lagrangian_value(const ProblemInstance& inst, const Vec& x, const Vec& sigma) {
  check_sigma_dim(inst, sigma);
  Mat G = g_matrix(inst, sigma);
  Vec F = f_vector(inst, sigma);
  double csum = 0.0;
  for (int i = 0; i < inst.m(); ++i) csum += sigma[i] * inst.constraints[i].c;
  return 0.5 * x.dot(G * x) - F.dot(x) - csum;
}

DualEvaluation evaluate_dual(const ProblemInstance& inst, const Vec& sigma) {
  check_sigma_dim(inst, sigma);
  if ((sigma.array() < 0.0).any())
    throw InputError("evaluate_dual requires sigma >= 0 componentwise");
  Mat G = g_matrix(inst, sigma);
  Vec F = f_vector(inst, sigma);
  DualEvaluation out;
  out.x = solve_gated(G, F, &out.rcond);
  double csum = 0.0;
  for (int i = 0; i < inst.m(); ++i) csum += sigma[i] * inst.constraints[i].c;
  out.value = -0.5 * F.dot(out.x) - csum;
  out.gradient = constraint_values(inst, out.x).g;
  return out;
}

DualPoint classify(const ProblemInstance& inst, const Vec& sigma,
                   std::optional<double> pd_tol, std::optional<double> feas_tol) {
  check_sigma_dim(inst, sigma);
  DualPoint out;
  out.sigma = sigma;
  if ((sigma.array() < 0.0).any()) return out;

  Mat G = g_matrix(inst, sigma);
  Eigen::SelfAdjointEigenSolver<Mat> es(G);
  const Vec& ev = es.eigenvalues();
  double amax = ev.cwiseAbs().maxCoeff();
  double amin = ev.cwiseAbs().minCoeff();
  double rcond = amax > 0 ? amin / amax : 0.0;
  if (rcond <= kRcondGate) return out;
  out.in_S = true;

  double gnorm = amax;  // spectral norm of symmetric G
  double pd = pd_tol.value_or(1e-10 * (1.0 + gnorm));
  out.in_S_plus = ev.minCoeff() > pd;

  try {
    Vec x = recover_x(inst, sigma);
    out.in_Y = is_feasible(inst, x, feas_tol.value_or(kFeasTol));
  } catch (const SingularGError&) {
    out.in_Y = false;
  }
  return out;
}

}  // namespace qda
