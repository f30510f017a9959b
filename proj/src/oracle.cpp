#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "json_util.hpp"

namespace qda {

Box search_box(const ProblemInstance& inst) {
  const int n = inst.n();
  bool found = false;
  const double inf = std::numeric_limits<double>::infinity();
  Vec lo = Vec::Constant(n, -inf), hi = Vec::Constant(n, inf);

  for (const Constraint& con : inst.constraints) {
    Eigen::SelfAdjointEigenSolver<Mat> es(con.Q);
    double emax = es.eigenvalues().cwiseAbs().maxCoeff();
    if (es.eigenvalues().minCoeff() <= 1e-10 * (1.0 + emax)) continue;
    found = true;

    Mat Qinv = es.operatorInverseSqrt() * es.operatorInverseSqrt();
    Vec center = -(Qinv * con.b);
    double r2 = 2.0 * con.c + con.b.dot(Qinv * con.b);  // level of the squared form
    if (r2 < 0.0) r2 = 0.0;  // this constraint alone is infeasible

    for (int j = 0; j < n; ++j) {
      double hw = 1.01 * std::sqrt(r2 * Qinv(j, j));
      lo[j] = std::max(lo[j], center[j] - hw);
      hi[j] = std::min(hi[j], center[j] + hw);
    }
  }
  if (!found)
    throw NoCompactConstraintError(
        "no constraint has positive definite Q: supply a search box explicitly");

  for (int j = 0; j < n; ++j)
    if (lo[j] > hi[j]) {  // disjoint ellipsoid bounds: collapse to a point
      double mid = 0.5 * (lo[j] + hi[j]);
      lo[j] = hi[j] = mid;
    }
  return {lo, hi};
}

namespace {

// 1/2 x'Mx without temporaries; M is column-major and symmetric
inline double half_quad(const Mat& M, const double* x) {
  const int n = static_cast<int>(M.rows());
  const double* md = M.data();
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    const double* col = md + static_cast<std::ptrdiff_t>(j) * n;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += col[i] * x[i];
    s += x[j] * acc;
  }
  return 0.5 * s;
}

inline double dot_n(const Vec& v, const double* x) {
  double s = 0.0;
  for (int i = 0; i < v.size(); ++i) s += v[i] * x[i];
  return s;
}

struct FastEval {
  const ProblemInstance& inst;

  double objective(const double* x) const {
    return half_quad(inst.A, x) - dot_n(inst.f, x);
  }

  bool feasible(const double* x) const {
    for (const Constraint& con : inst.constraints) {
      double g = half_quad(con.Q, x) + dot_n(con.b, x) - con.c;
      if (g > 1e-9 * (1.0 + std::abs(con.c))) return false;
    }
    return true;
  }
};

bool feasible_work(const ProblemInstance& inst, const Vec& x) {
  ConstraintValues cv = constraint_values(inst, x);
  for (int i = 0; i < inst.m(); ++i)
    if (cv.g[i] > 1e-11 * (1.0 + std::abs(inst.constraints[i].c))) return false;
  return true;
}

struct Polisher {
  const ProblemInstance& inst;
  double step_cap;  // box diagonal: keeps descent bounded when curvature vanishes

  double objective(const Vec& x) const { return objective_value(inst, x); }

  // smallest positive step along d at which some constraint crosses zero
  // going outward; +infinity when the whole ray stays feasible
  double max_step(const Vec& x, const Vec& d) const {
    double amax = std::numeric_limits<double>::infinity();
    ConstraintValues cv = constraint_values(inst, x);
    for (int i = 0; i < inst.m(); ++i) {
      const Constraint& con = inst.constraints[i];
      double qa = d.dot(con.Q * d);
      double qb = d.dot(con.Q * x + con.b);
      double qc = std::min(cv.g[i], 0.0);
      // g_i(x + a d) = qc + qb a + qa a^2 / 2
      if (std::abs(qa) < 1e-300) {
        if (qb > 0.0 && qc < 0.0) amax = std::min(amax, -qc / qb);
        if (qb > 0.0 && qc == 0.0) amax = std::min(amax, 0.0);
        continue;
      }
      double disc = qb * qb - 2.0 * qa * qc;
      if (disc < 0.0) continue;
      double sq = std::sqrt(disc);
      double r1 = (-qb - sq) / qa, r2 = (-qb + sq) / qa;
      if (r1 > r2) std::swap(r1, r2);
      for (double r : {r1, r2}) {
        if (r < 0.0) continue;
        if (qa * r + qb > 0.0) {  // leaving the feasible side
          amax = std::min(amax, r);
          break;
        }
      }
    }
    return amax;
  }

  bool line_step(Vec& x, double& val, const Vec& d) const {
    double dn = d.norm();
    if (dn < 1e-15) return false;
    Vec grad = inst.A * x - inst.f;
    double slope = grad.dot(d);
    if (slope >= 0.0) return false;
    double dAd = d.dot(inst.A * d);
    double alpha = dAd > 1e-300 ? -slope / dAd : std::numeric_limits<double>::infinity();
    alpha = std::min(alpha, max_step(x, d));
    alpha = std::min(alpha, step_cap / dn);
    if (!(alpha > 0.0)) return false;
    for (int t = 0; t < 60; ++t) {
      Vec xt = x + alpha * d;
      double vt = objective(xt);
      if (feasible_work(inst, xt) && vt < val) {
        x = std::move(xt);
        val = vt;
        return true;
      }
      alpha *= 0.5;
    }
    return false;
  }

  // slide along the active surface: move in the tangent space and restore the
  // active constraints with Newton pullbacks. Uses the reduced Newton
  // direction of the Lagrangian when its curvature is positive definite
  // (quadratic convergence on curved boundaries), steepest tangent descent
  // otherwise.
  bool tangent_step(Vec& x, double& val) const {
    ConstraintValues cv = constraint_values(inst, x);
    std::vector<int> act;
    for (int i = 0; i < inst.m(); ++i)
      if (cv.g[i] >= -1e-8 * (1.0 + std::abs(inst.constraints[i].c))) act.push_back(i);
    if (act.empty()) return false;
    const int n = inst.n();
    const int k = static_cast<int>(act.size());
    if (k >= n) return false;  // no tangent space left

    Vec grad = inst.A * x - inst.f;
    Mat N(n, k);
    for (int j = 0; j < k; ++j)
      N.col(j) = inst.constraints[act[j]].Q * x + inst.constraints[act[j]].b;
    Vec lambda = N.colPivHouseholderQr().solve(grad);
    Vec pg = grad - N * lambda;  // gradient projected off the normals
    if (pg.norm() <= 1e-13 * (1.0 + grad.norm())) return false;  // stationary

    // orthonormal tangent basis from the full QR of N
    Eigen::HouseholderQR<Mat> qr(N);
    Mat Qfull = qr.householderQ();
    Mat Z = Qfull.rightCols(n - k);

    Vec d = -pg;
    Mat H = inst.A;  // Lagrangian curvature on the surface
    for (int j = 0; j < k; ++j) H -= lambda[j] * inst.constraints[act[j]].Q;
    Mat Hr = Z.transpose() * H * Z;
    Eigen::LLT<Mat> llt(Hr);
    if (llt.info() == Eigen::Success) {
      Vec dn = -(Z * llt.solve(Z.transpose() * grad));
      if (dn.dot(grad) < 0.0) d = dn;  // only take Newton when it descends
    }

    // no feasibility clamp here: the chord leaves the surface by construction
    // and the restoration pullback below re-establishes the active set
    double alpha = std::min(1.0, step_cap / std::max(d.norm(), 1e-300));
    for (int t = 0; t < 60; ++t) {
      Vec xt = x + alpha * d;
      for (int r = 0; r < 12; ++r) {
        double worst = 0.0;
        for (int i : act) {
          const Constraint& con = inst.constraints[i];
          double gi = 0.5 * xt.dot(con.Q * xt) + con.b.dot(xt) - con.c;
          worst = std::max(worst, std::abs(gi));
          Vec ni = con.Q * xt + con.b;
          double nn = ni.squaredNorm();
          if (nn > 1e-300) xt -= (gi / nn) * ni;
        }
        if (worst <= 1e-14 * (1.0 + std::abs(val))) break;
      }
      double vt = objective(xt);
      if (feasible_work(inst, xt) && vt < val) {
        x = std::move(xt);
        val = vt;
        return true;
      }
      alpha *= 0.5;
    }
    return false;
  }

  Vec polish(Vec x, int iters) const {
    double val = objective(x);
    for (int it = 0; it < iters; ++it) {
      Vec d = -(inst.A * x - inst.f);
      if (line_step(x, val, d)) continue;
      if (!tangent_step(x, val)) break;
    }
    return x;
  }
};

bool lex_less(const Vec& a, const Vec& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

struct Seed {
  double value;
  long long order;
  Vec x;
};

std::vector<Seed> grid_scan(const ProblemInstance& inst, const Box& box, int grid) {
  const int n = inst.n();
  FastEval fe{inst};
  // keep the K best feasible grid points; idx tiebreak keeps the selection
  // deterministic
  constexpr std::size_t kKeep = 100;
  auto cmp = [](const Seed& a, const Seed& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.order < b.order;
  };
  std::priority_queue<Seed, std::vector<Seed>, decltype(cmp)> heap(cmp);

  std::vector<double> xbuf(n);
  std::vector<int> idx(n, 0);
  std::vector<double> pitch(n);
  for (int j = 0; j < n; ++j)
    pitch[j] = grid > 1 ? (box.hi[j] - box.lo[j]) / (grid - 1) : 0.0;

  long long order = 0;
  bool done = false;
  while (!done) {
    for (int j = 0; j < n; ++j) xbuf[j] = box.lo[j] + pitch[j] * idx[j];
    if (fe.feasible(xbuf.data())) {
      double v = fe.objective(xbuf.data());
      if (heap.size() < kKeep || v < heap.top().value) {
        Seed s;
        s.value = v;
        s.order = order;
        s.x = Eigen::Map<const Vec>(xbuf.data(), n);
        heap.push(std::move(s));
        if (heap.size() > kKeep) heap.pop();
      }
    }
    ++order;
    int j = 0;
    for (; j < n; ++j) {
      if (++idx[j] < grid) break;
      idx[j] = 0;
    }
    if (j == n) done = true;
  }

  std::vector<Seed> seeds;
  while (!heap.empty()) {
    seeds.push_back(heap.top());
    heap.pop();
  }
  std::sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.order < b.order;
  });
  return seeds;
}

}  // namespace

OracleResult global_min_brute(const ProblemInstance& inst, const OracleOptions& opts) {
  const int n = inst.n();
  if (n > 4)
    throw DimensionTooLargeError("brute-force oracle supports at most 4 variables");
  if (opts.grid_points_per_axis < 64)
    throw InputError("oracle grid must have at least 64 points per axis");
  if (opts.polish_iters < 0) throw InputError("polish_iters must be nonnegative");
  if (!(opts.value_tol > 0.0)) throw InputError("value_tol must be positive");

  Box box = opts.box ? *opts.box : search_box(inst);
  for (int j = 0; j < n; ++j)
    if (!(box.lo[j] <= box.hi[j]) || !std::isfinite(box.lo[j]) || !std::isfinite(box.hi[j]))
      throw InputError("oracle search box is invalid");

  int grid = opts.grid_points_per_axis;
  std::vector<Seed> seeds = grid_scan(inst, box, grid);
  if (seeds.empty()) {
    grid *= 2;  // one refinement before declaring the instance infeasible
    seeds = grid_scan(inst, box, grid);
    if (seeds.empty())
      throw InfeasibleEverywhereError(
          "no feasible point found on the search grid, refined once");
  }

  double diag = (box.hi - box.lo).norm();
  Polisher polisher{inst, std::max(diag, 1.0)};

  std::vector<std::pair<double, Vec>> polished;
  for (const Seed& s : seeds) {
    Vec x = polisher.polish(s.x, opts.polish_iters);
    if (!feasible_work(inst, x)) x = s.x;  // never trade feasibility for value
    polished.push_back({objective_value(inst, x), x});
  }
  std::sort(polished.begin(), polished.end(),
            [](const std::pair<double, Vec>& a, const std::pair<double, Vec>& b) {
              if (a.first != b.first) return a.first < b.first;
              return lex_less(a.second, b.second);
            });

  OracleResult out;
  out.best_value = polished.front().first;
  out.resolution = 0.0;
  for (int j = 0; j < n; ++j)
    out.resolution =
        std::max(out.resolution, grid > 1 ? (box.hi[j] - box.lo[j]) / (grid - 1) : 0.0);
  out.box = box;

  for (const auto& [v, x] : polished) {
    if (v > out.best_value + opts.value_tol) break;
    bool dup = false;
    for (const Vec& rep : out.minimizers)
      if ((x - rep).lpNorm<Eigen::Infinity>() <= 1e-6) {
        dup = true;
        break;
      }
    if (!dup) out.minimizers.push_back(x);
  }
  std::sort(out.minimizers.begin(), out.minimizers.end(), lex_less);
  return out;
}

OracleResult global_min_brute(const ProblemInstance& inst, int grid_points_per_axis,
                              int polish_iters, double value_tol) {
  OracleOptions opts;
  opts.grid_points_per_axis = grid_points_per_axis;
  opts.polish_iters = polish_iters;
  opts.value_tol = value_tol;
  return global_min_brute(inst, opts);
}

int count_distinct_minimizers(const ProblemInstance& inst, double value_tol,
                              int grid_points_per_axis) {
  OracleOptions opts;
  opts.grid_points_per_axis = grid_points_per_axis;
  opts.value_tol = value_tol;
  return static_cast<int>(global_min_brute(inst, opts).minimizers.size());
}

std::string oracle_result_to_json(const OracleResult& result) {
  OrderedJson doc;
  doc["best_value"] = result.best_value;
  OrderedJson mins = OrderedJson::array();
  for (const Vec& x : result.minimizers) {
    OrderedJson row = OrderedJson::array();
    for (int j = 0; j < x.size(); ++j) row.push_back(x[j]);
    mins.push_back(std::move(row));
  }
  doc["minimizers"] = std::move(mins);
  doc["count"] = static_cast<int>(result.minimizers.size());
  doc["resolution"] = result.resolution;
  OrderedJson bx;
  OrderedJson blo = OrderedJson::array(), bhi = OrderedJson::array();
  for (int j = 0; j < result.box.lo.size(); ++j) {
    blo.push_back(result.box.lo[j]);
    bhi.push_back(result.box.hi[j]);
  }
  bx["lo"] = std::move(blo);
  bx["hi"] = std::move(bhi);
  doc["box"] = std::move(bx);
  return dump_json(doc);
}

}  // namespace qda
