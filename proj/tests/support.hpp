#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "dual.hpp"
#include "instance.hpp"

namespace testsupport {

using qda::Constraint;
using qda::Mat;
using qda::ProblemInstance;
using qda::Rng;
using qda::Vec;

inline Mat random_symmetric(Rng& rng, int n, double lo = -3.0, double hi = 3.0) {
  Mat M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = rng.uniform(lo, hi);
  return 0.5 * (M + M.transpose()).eval();
}

inline Vec random_vec(Rng& rng, int n, double lo = -3.0, double hi = 3.0) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(lo, hi);
  return v;
}

// push eigenvalues away from zero without flipping their sign
inline Mat regularize_nonsingular(const Mat& Q, double floor_mag = 0.1) {
  Eigen::SelfAdjointEigenSolver<Mat> es(Q);
  Vec d = es.eigenvalues();
  for (int i = 0; i < d.size(); ++i) {
    if (std::abs(d[i]) < floor_mag) d[i] = (d[i] < 0.0) ? -floor_mag : floor_mag;
  }
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

inline Mat random_spd(Rng& rng, int n, double shift = 0.5) {
  Mat M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = rng.uniform(-1.0, 1.0);
  Mat S = M.transpose() * M;
  return S + shift * Mat::Identity(n, n);
}

// general (typically nonconvex) instance, entries U[-3,3], Q_i regularized
inline ProblemInstance random_instance(Rng& rng, int n, int m) {
  Mat A = random_symmetric(rng, n);
  Vec f = random_vec(rng, n);
  std::vector<Constraint> cons;
  cons.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    Constraint c;
    c.Q = regularize_nonsingular(random_symmetric(rng, n));
    c.b = random_vec(rng, n);
    c.c = rng.uniform(-3.0, 3.0);
    cons.push_back(std::move(c));
  }
  return ProblemInstance(A, f, cons);
}

// convex with a strict interior point at the origin
inline ProblemInstance random_convex_instance(Rng& rng, int n, int m) {
  Mat A = random_spd(rng, n, 0.5);
  Vec f = random_vec(rng, n);
  if (f.norm() < 1e-3) f[0] = 1.0;  // keep f away from zero
  std::vector<Constraint> cons;
  cons.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    Constraint c;
    c.Q = random_spd(rng, n, 0.3);
    c.b = random_vec(rng, n, -1.0, 1.0);
    c.c = rng.uniform(0.5, 2.0);  // g_i(0) = -c < 0
    cons.push_back(std::move(c));
  }
  return ProblemInstance(A, f, cons);
}

inline double fd_dual_gradient(const ProblemInstance& inst, const Vec& sigma, int i,
                               double h = 1e-6) {
  Vec lo = sigma, hi = sigma;
  lo[i] -= h;
  hi[i] += h;
  return (qda::dual_value(inst, hi) - qda::dual_value(inst, lo)) / (2.0 * h);
}

inline bool lex_less(const Vec& a, const Vec& b) {
  for (int i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return a.size() < b.size();
}

}  // namespace testsupport
