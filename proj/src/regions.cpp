#include "regions.hpp"

#include <algorithm>
#include <cmath>

namespace qda {

namespace {

void require_m1(const ProblemInstance& inst, const char* op) {
  if (inst.m() != 1)
    throw MNotOneError(std::string(op) + " requires an instance with exactly one constraint");
}

Vec sigma1(double s) {
  Vec v(1);
  v << s;
  return v;
}

// analytic tail value of psi (equals the slope of phi at infinity):
// x(sigma) -> -Q^{-1}b, so psi -> -c - 1/2 b'Q^{-1}b
double psi_tail_value(const ProblemInstance& inst) {
  const Constraint& con = inst.constraints[0];
  Eigen::SelfAdjointEigenSolver<Mat> es(con.Q);
  if (es.eigenvalues().cwiseAbs().minCoeff() <=
      1e-10 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff()))
    throw InputError("constraint matrix Q1 is singular");
  Vec w = es.eigenvectors().transpose() * con.b;
  w.array() /= es.eigenvalues().array();
  double bqb = con.b.dot(es.eigenvectors() * w);
  return -con.c - 0.5 * bqb;
}

double det_g(const ProblemInstance& inst, double s) {
  return g_matrix(inst, sigma1(s)).determinant();
}

int sign_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace

std::optional<std::pair<double, double>> try_phi_psi(const ProblemInstance& inst,
                                                     double sigma) {
  Vec sig = sigma1(sigma);
  try {
    Vec x = recover_x(inst, sig);
    double phi = -0.5 * f_vector(inst, sig).dot(x) - sigma * inst.constraints[0].c;
    double psi = constraint_values(inst, x).g[0];
    return std::make_pair(phi, psi);
  } catch (const SingularGError&) {
    return std::nullopt;
  }
}

double phi_scalar(const ProblemInstance& inst, double sigma) {
  require_m1(inst, "phi_scalar");
  auto v = try_phi_psi(inst, sigma);
  if (!v) throw SingularGError("phi is undefined: G(sigma) is numerically singular");
  return v->first;
}

double psi_scalar(const ProblemInstance& inst, double sigma) {
  require_m1(inst, "psi_scalar");
  auto v = try_phi_psi(inst, sigma);
  if (!v) throw SingularGError("psi is undefined: G(sigma) is numerically singular");
  return v->second;
}

std::vector<double> singularities(const ProblemInstance& inst) {
  require_m1(inst, "singularities");
  const Constraint& con = inst.constraints[0];
  const int n = inst.n();

  Eigen::SelfAdjointEigenSolver<Mat> qes(con.Q);
  if (qes.eigenvalues().cwiseAbs().minCoeff() <=
      1e-10 * std::max(1.0, qes.eigenvalues().cwiseAbs().maxCoeff()))
    throw InputError("constraint matrix Q1 is singular");

  // det(A + sigma Q) = 0 exactly at the eigenvalues of -Q^{-1}A
  Mat B = -con.Q.fullPivLu().solve(inst.A);
  Eigen::EigenSolver<Mat> es(B);

  std::vector<double> raw;
  for (int i = 0; i < n; ++i) {
    std::complex<double> ev = es.eigenvalues()[i];
    if (std::abs(ev.imag()) > 1e-8 * (1.0 + std::abs(ev.real()))) continue;
    double s = ev.real();
    if (s < -1e-10) continue;
    raw.push_back(std::max(0.0, s));
  }
  std::sort(raw.begin(), raw.end());

  std::vector<double> out;
  for (double s : raw) {
    if (!out.empty() && s - out.back() <= 1e-9 * (1.0 + s)) continue;
    out.push_back(s);
  }

  // sharpen each estimate by bisection on the determinant sign when the
  // crossing is simple; even-multiplicity crossings keep the eigenvalue
  for (double& s : out) {
    double delta = 1e-6 * (1.0 + s);
    double lo = std::max(0.0, s - delta), hi = s + delta;
    double dlo = det_g(inst, lo), dhi = det_g(inst, hi);
    if (sign_of(dlo) * sign_of(dhi) >= 0) continue;
    for (int it = 0; it < 120; ++it) {
      double mid = 0.5 * (lo + hi);
      double dm = det_g(inst, mid);
      if (dm == 0.0) {
        lo = hi = mid;
        break;
      }
      if (sign_of(dm) == sign_of(dlo))
        lo = mid, dlo = dm;
      else
        hi = mid;
      if (hi - lo <= 1e-16 * (1.0 + std::abs(hi))) break;
    }
    s = 0.5 * (lo + hi);
  }
  return out;
}

namespace {

std::vector<Interval> s_cells(const std::vector<double>& sing) {
  std::vector<Interval> cells;
  double prev = 0.0;
  bool prev_closed = true;
  for (double s : sing) {
    if (s <= 1e-300) {  // puncture exactly at the origin
      prev = 0.0;
      prev_closed = false;
      continue;
    }
    cells.push_back({prev, s, prev_closed, false});
    prev = s;
    prev_closed = false;
  }
  cells.push_back({prev, kPlusInfinity, prev_closed, false});
  // drop degenerate leading cell when 0 itself is singular
  std::vector<Interval> keep;
  for (const Interval& c : cells)
    if (c.lo < c.hi) keep.push_back(c);
  return keep;
}

bool cell_probe(const Interval& cell, double* probe) {
  if (cell.unbounded_above())
    *probe = cell.lo + std::max(1.0, std::abs(cell.lo));
  else
    *probe = 0.5 * (cell.lo + cell.hi);
  return true;
}

bool pd_at(const ProblemInstance& inst, double s) {
  Mat G = g_matrix(inst, sigma1(s));
  Eigen::SelfAdjointEigenSolver<Mat> es(G, Eigen::EigenvaluesOnly);
  double norm = es.eigenvalues().cwiseAbs().maxCoeff();
  return es.eigenvalues().minCoeff() > 1e-10 * (1.0 + norm);
}

// geometric ladders out of each endpoint plus a uniform sweep; points where
// the gate fails are dropped by the scanner
std::vector<double> cell_samples(const Interval& cell, int count) {
  std::vector<double> pts;
  double a = cell.lo;
  if (cell.lo_closed) pts.push_back(a);
  if (cell.unbounded_above()) {
    double h0 = 1e-6 * (1.0 + std::abs(a));
    double top = 1e8;
    double growth = std::pow(top / h0, 1.0 / std::max(1, count - 1));
    double h = h0;
    for (int k = 0; k < count; ++k) {
      pts.push_back(a + h);
      h *= growth;
      if (a + h > top) break;
    }
    pts.push_back(top);
  } else {
    double span = cell.hi - cell.lo;
    int half = std::max(8, count / 2);
    double h0 = span * 1e-12;
    double growth = std::pow(0.5 * span / h0, 1.0 / std::max(1, half - 1));
    double h = h0;
    for (int k = 0; k < half; ++k) {
      pts.push_back(a + h);
      pts.push_back(cell.hi - h);
      h *= growth;
    }
    for (int j = 1; j < half; ++j) pts.push_back(a + span * j / half);
    if (cell.hi_closed) pts.push_back(cell.hi);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  // clip to the closure of the cell
  std::vector<double> keep;
  for (double p : pts)
    if (p >= cell.lo && (cell.unbounded_above() || p <= cell.hi)) keep.push_back(p);
  return keep;
}

double bisect_psi(const ProblemInstance& inst, double lo, double hi, double vlo) {
  // precondition: psi(lo), psi(hi) valid with opposite signs
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    auto vm = try_phi_psi(inst, mid);
    if (!vm) break;  // should not happen inside a cell
    double v = vm->second;
    if (v == 0.0) return mid;
    if (sign_of(v) == sign_of(vlo))
      lo = mid, vlo = v;
    else
      hi = mid;
    if (hi - lo <= 1e-15 * (1.0 + std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

// golden-section refinement of an extremum bracketed by three samples
double golden_extremum(const ProblemInstance& inst, double a, double b, bool minimize,
                       double* extremum_value) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  auto val = [&](double s) {
    auto v = try_phi_psi(inst, s);
    return v ? v->second : (minimize ? 1e300 : -1e300);
  };
  double f1 = val(x1), f2 = val(x2);
  for (int it = 0; it < 120 && b - a > 1e-14 * (1.0 + std::abs(b)); ++it) {
    bool pick_left = minimize ? (f1 < f2) : (f1 > f2);
    if (pick_left) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = val(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = val(x2);
    }
  }
  double s = 0.5 * (a + b);
  if (extremum_value) *extremum_value = val(s);
  return s;
}

struct CellScan {
  std::vector<double> roots;
  std::vector<double> touches;
};

// sign of psi on a cut cell (lo, hi): constant away from tangencies, so
// probe a few interior points and trust the one farthest from zero
std::optional<int> interior_psi_sign(const ProblemInstance& inst, double lo, double hi) {
  bool found = false;
  double best = 0.0;
  int sgn = 0;
  auto look = [&](double s) {
    auto v = try_phi_psi(inst, s);
    if (!v) return;
    double mag = std::abs(v->second);
    if (!found || mag > best) {
      found = true;
      best = mag;
      sgn = sign_of(v->second);
    }
  };
  if (std::isinf(hi)) {
    double base = std::max(1.0, std::abs(lo));
    for (double t : {1.0, 0.5, 2.0}) look(lo + t * base);
  } else {
    for (double t : {0.5, 0.29, 0.71}) look(lo + t * (hi - lo));
  }
  if (!found) return std::nullopt;
  return sgn;
}

CellScan scan_cell(const ProblemInstance& inst, const Interval& cell, int count) {
  CellScan out;
  std::vector<double> ss;
  std::vector<double> vv;
  for (double s : cell_samples(cell, count)) {
    auto v = try_phi_psi(inst, s);
    if (!v) continue;
    ss.push_back(s);
    vv.push_back(v->second);
  }
  const std::size_t k = ss.size();
  // sign changes between consecutive valid samples
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (vv[i] == 0.0) {
      out.roots.push_back(ss[i]);  // exact zero on a sample
      continue;
    }
    if (vv[i + 1] != 0.0 && sign_of(vv[i]) != sign_of(vv[i + 1]))
      out.roots.push_back(bisect_psi(inst, ss[i], ss[i + 1], vv[i]));
  }
  // interior extrema that the sign sweep cannot see: positive local minima
  // may hide tangential zeros or a missed root pair, negative local maxima
  // may hide a missed pair
  for (std::size_t i = 1; i + 1 < k; ++i) {
    bool pos_min = vv[i] > 0 && vv[i - 1] > vv[i] && vv[i + 1] > vv[i];
    bool neg_max = vv[i] < 0 && vv[i - 1] < vv[i] && vv[i + 1] < vv[i];
    if (!pos_min && !neg_max) continue;
    double extremum = 0.0;
    double s = golden_extremum(inst, ss[i - 1], ss[i + 1], pos_min, &extremum);
    // an extremum this close to zero is a tangency at working precision,
    // not a crossing pair
    double graze = 1e-9 * (1.0 + std::max(std::abs(vv[i - 1]), std::abs(vv[i + 1])));
    if (pos_min) {
      if (extremum < -graze) {  // dipped below zero between samples: two roots
        auto vsl = try_phi_psi(inst, ss[i - 1]);
        auto vsr = try_phi_psi(inst, ss[i + 1]);
        if (vsl && vsr) {
          out.roots.push_back(bisect_psi(inst, ss[i - 1], s, vsl->second));
          out.roots.push_back(bisect_psi(inst, s, ss[i + 1], extremum));
        }
      } else if (extremum <= graze) {
        out.touches.push_back(s);
      }
    } else {
      if (extremum > graze) {
        auto vsl = try_phi_psi(inst, ss[i - 1]);
        if (vsl) {
          out.roots.push_back(bisect_psi(inst, ss[i - 1], s, vsl->second));
          out.roots.push_back(bisect_psi(inst, s, ss[i + 1], extremum));
        }
      }
      // a tangential zero from below changes nothing: the surrounding cell
      // already satisfies psi <= 0
    }
  }
  std::sort(out.roots.begin(), out.roots.end());
  std::vector<double> dedup;
  for (double r : out.roots)
    if (dedup.empty() || r - dedup.back() > 1e-7 * (1.0 + std::abs(r))) dedup.push_back(r);

  // side probes separate genuine crossings from tangencies that FP noise
  // turned into a root pair: a crossing changes sign across the root, a
  // grazing minimum stays positive on both sides (and a grazing maximum
  // stays negative, cutting nothing)
  out.roots.clear();
  for (std::size_t i = 0; i < dedup.size(); ++i) {
    double r = dedup[i];
    double delta = 1e-5 * (1.0 + std::abs(r));
    if (i > 0) delta = std::min(delta, 0.45 * (r - dedup[i - 1]));
    if (i + 1 < dedup.size()) delta = std::min(delta, 0.45 * (dedup[i + 1] - r));
    std::optional<std::pair<double, double>> vl, vr;
    if (r - delta > cell.lo || cell.lo_closed) vl = try_phi_psi(inst, r - delta);
    if (cell.unbounded_above() || r + delta < cell.hi)
      vr = try_phi_psi(inst, r + delta);
    if (vl && vr && vl->second != 0.0 && vr->second != 0.0 &&
        sign_of(vl->second) == sign_of(vr->second)) {
      if (vl->second > 0.0) out.touches.push_back(r);
      continue;
    }
    out.roots.push_back(r);
  }
  std::sort(out.touches.begin(), out.touches.end());
  std::vector<double> tdedup;
  for (double t : out.touches)
    if (tdedup.empty() || t - tdedup.back() > 1e-7 * (1.0 + std::abs(t)))
      tdedup.push_back(t);
  out.touches = std::move(tdedup);
  return out;
}

}  // namespace

SRegions s_regions(const ProblemInstance& inst) {
  require_m1(inst, "s_regions");
  std::vector<double> sing = singularities(inst);
  std::vector<Interval> cells = s_cells(sing);
  std::vector<Interval> pd_cells;
  for (const Interval& cell : cells) {
    double probe;
    cell_probe(cell, &probe);
    if (pd_at(inst, probe)) pd_cells.push_back(cell);
  }
  SRegions out;
  out.S = IntervalUnion::of(cells);
  out.S_plus = IntervalUnion::of(pd_cells);
  return out;
}

Region1DContext analyze_region_1d(const ProblemInstance& inst, int samples_per_cell) {
  require_m1(inst, "analyze_region_1d");
  if (samples_per_cell < 16) throw InputError("samples_per_cell must be at least 16");
  Region1DContext ctx;
  ctx.sing = singularities(inst);
  ctx.regions = s_regions(inst);
  ctx.psi_inf = psi_tail_value(inst);
  for (const Interval& cell : ctx.regions.S.intervals()) {
    CellScan scan = scan_cell(inst, cell, samples_per_cell);
    ctx.roots.insert(ctx.roots.end(), scan.roots.begin(), scan.roots.end());
    ctx.touch_points.insert(ctx.touch_points.end(), scan.touches.begin(),
                            scan.touches.end());
  }
  std::sort(ctx.roots.begin(), ctx.roots.end());
  std::sort(ctx.touch_points.begin(), ctx.touch_points.end());
  return ctx;
}

std::vector<double> psi_roots(const ProblemInstance& inst, int samples_per_cell) {
  return analyze_region_1d(inst, samples_per_cell).roots;
}

IntervalUnion y_regions_from_context(const ProblemInstance& inst, const Region1DContext& ctx) {
  std::vector<Interval> parts;
  for (const Interval& cell : ctx.regions.S.intervals()) {
    std::vector<double> cuts;
    for (double r : ctx.roots)
      if (r > cell.lo && (cell.unbounded_above() || r < cell.hi)) cuts.push_back(r);

    std::vector<double> edges;
    edges.push_back(cell.lo);
    edges.insert(edges.end(), cuts.begin(), cuts.end());
    edges.push_back(cell.unbounded_above() ? kPlusInfinity : cell.hi);

    for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
      double lo = edges[j], hi = edges[j + 1];
      auto sgn = interior_psi_sign(inst, lo, hi);
      if (!sgn || *sgn > 0) continue;
      Interval iv;
      iv.lo = lo;
      iv.hi = hi;
      iv.lo_closed = (j > 0) || cell.lo_closed;       // roots are closed ends
      iv.hi_closed = (j + 2 < edges.size());          // interior cut = root
      if (std::isinf(hi)) iv.hi_closed = false;
      parts.push_back(iv);
    }
  }
  for (double t : ctx.touch_points) parts.push_back({t, t, true, true});
  return IntervalUnion::of(parts);
}

IntervalUnion y_regions(const ProblemInstance& inst, int samples_per_cell) {
  Region1DContext ctx = analyze_region_1d(inst, samples_per_cell);
  return y_regions_from_context(inst, ctx);
}

namespace {

// Pole structure of phi at a root p of det G. Each eigenvalue of G crossing
// zero at p moves with slope v'Qv (v the unit eigenvector), and phi picks up
// the term -(v'F)^2 / (2 v'Qv (sigma - p)). The summed residue T fixes both
// one-sided limits of phi and the limit of psi ~ T / (2 (sigma - p)^2).
// Returns 0 when F has no component along the null space (removable
// singularity) and nullopt when a crossing slope is too degenerate to trust.
std::optional<double> pole_residue(const ProblemInstance& inst, double p) {
  Vec sig = sigma1(p);
  Mat G = g_matrix(inst, sig);
  Vec F = f_vector(inst, sig);
  const Mat& Q = inst.constraints[0].Q;
  Eigen::SelfAdjointEigenSolver<Mat> es(G);
  double amax = es.eigenvalues().cwiseAbs().maxCoeff();
  double T = 0.0;
  bool pole = false;
  for (int i = 0; i < G.rows(); ++i) {
    if (std::abs(es.eigenvalues()[i]) > 1e-8 * (1.0 + amax)) continue;
    Vec v = es.eigenvectors().col(i);
    double w = v.dot(F);
    if (std::abs(w) <= 1e-9 * (1.0 + F.norm())) continue;
    double slope = v.dot(Q * v);
    if (std::abs(slope) <= 1e-10 * (1.0 + Q.norm())) return std::nullopt;
    T += w * w / slope;
    pole = true;
  }
  if (!pole) return 0.0;
  if (T == 0.0) return std::nullopt;
  return T;
}

// numeric fallback: phi and psi are rational in sigma, so probes walking in
// toward a pole (offsets shrinking x100) keep one sign and keep growing,
// while probes toward a finite limit agree to O(offset)
LimitValue ladder_limit(const ProblemInstance& inst, double sigma, int side,
                        bool use_phi) {
  LimitValue out;
  double scale = 1.0 + std::abs(sigma);
  double v[3];
  int got = 0;
  for (double rel : {1e-4, 1e-6, 1e-8}) {
    auto val = try_phi_psi(inst, sigma + side * rel * scale);
    if (val) v[got++] = use_phi ? val->first : val->second;
  }
  if (got == 0) {
    out.kind = LimitKind::Finite;
    out.value = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  if (got >= 2) {
    double a = v[got - 2], b = v[got - 1];
    if ((a > 0.0) == (b > 0.0) && std::abs(b) >= 20.0 * std::abs(a) &&
        std::abs(b) > 1e-6) {
      out.kind = b > 0.0 ? LimitKind::PlusInfinity : LimitKind::MinusInfinity;
      return out;
    }
  }
  out.kind = LimitKind::Finite;
  out.value = v[got - 1];
  return out;
}

}  // namespace

LimitValue phi_limit_at(const ProblemInstance& inst, double sigma, int side) {
  require_m1(inst, "phi_limit_at");
  if (auto T = pole_residue(inst, sigma); T && *T != 0.0) {
    LimitValue out;
    // phi ~ -T / (2 (sigma_probe - sigma)), so the sign flips across the pole
    bool plus = (*T > 0.0) == (side < 0);
    out.kind = plus ? LimitKind::PlusInfinity : LimitKind::MinusInfinity;
    return out;
  }
  return ladder_limit(inst, sigma, side, true);
}

namespace {

LimitValue psi_limit_at(const ProblemInstance& inst, double sigma, int side) {
  if (auto T = pole_residue(inst, sigma); T && *T != 0.0) {
    LimitValue out;
    out.kind = *T > 0.0 ? LimitKind::PlusInfinity : LimitKind::MinusInfinity;
    return out;
  }
  return ladder_limit(inst, sigma, side, false);
}

}  // namespace

VariationTable variation_table(const ProblemInstance& inst) {
  require_m1(inst, "variation_table");
  Region1DContext ctx = analyze_region_1d(inst);
  VariationTable table;

  std::vector<double> bps;
  bps.insert(bps.end(), ctx.sing.begin(), ctx.sing.end());
  bps.insert(bps.end(), ctx.roots.begin(), ctx.roots.end());
  bps.insert(bps.end(), ctx.touch_points.begin(), ctx.touch_points.end());
  std::sort(bps.begin(), bps.end());
  table.breakpoints = bps;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (double bp : bps) {
    auto v = try_phi_psi(inst, bp);
    table.phi_at_breakpoints.push_back(v ? v->first : nan);
    table.psi_at_breakpoints.push_back(v ? v->second : nan);
  }

  if (auto v0 = try_phi_psi(inst, 0.0)) {
    table.zero_in_S = true;
    table.phi_at_zero = v0->first;
    table.psi_at_zero = v0->second;
  } else {
    table.phi_at_zero = nan;
    table.psi_at_zero = nan;
  }

  // cells of [0, inf) cut at the breakpoints
  std::vector<double> edges;
  edges.push_back(0.0);
  for (double bp : bps)
    if (bp > 0.0) edges.push_back(bp);
  edges.push_back(kPlusInfinity);
  for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
    double lo = edges[j], hi = edges[j + 1];
    double probe = std::isinf(hi) ? lo + std::max(1.0, std::abs(lo)) : 0.5 * (lo + hi);
    auto v = try_phi_psi(inst, probe);
    if (!v) {
      // retry off-center before giving up on the cell
      probe = std::isinf(hi) ? lo + 2.0 : lo + 0.25 * (hi - lo);
      v = try_phi_psi(inst, probe);
    }
    table.psi_sign.push_back(v ? sign_of(v->second) : 0);
  }

  for (double s : ctx.sing) {
    SingularLimit lim;
    lim.sigma = s;
    lim.has_left = s > 0.0;
    if (lim.has_left) {
      lim.phi_left = phi_limit_at(inst, s, -1);
      lim.psi_left = psi_limit_at(inst, s, -1);
    }
    lim.phi_right = phi_limit_at(inst, s, +1);
    lim.psi_right = psi_limit_at(inst, s, +1);
    table.singular_limits.push_back(lim);
  }

  table.psi_limit_at_infinity = ctx.psi_inf;
  if (auto vl = try_phi_psi(inst, 1e8)) {
    table.psi_at_large_sigma = vl->second;
  } else {
    table.psi_at_large_sigma = nan;
  }

  double slope_scale = 1e-12 * (1.0 + std::abs(ctx.psi_inf));
  if (ctx.psi_inf > slope_scale) {
    table.phi_at_infinity.kind = LimitKind::PlusInfinity;
  } else if (ctx.psi_inf < -slope_scale) {
    table.phi_at_infinity.kind = LimitKind::MinusInfinity;
  } else {
    table.phi_at_infinity.kind = LimitKind::Finite;
    auto vl = try_phi_psi(inst, 1e8);
    table.phi_at_infinity.value = vl ? vl->first : nan;
  }
  return table;
}

std::string curve_csv(const ProblemInstance& inst, double lo, double hi, int samples) {
  require_m1(inst, "curve_csv");
  if (!(lo <= hi)) throw InputError("curve_csv: lo must not exceed hi");
  if (samples < 2) throw InputError("curve_csv: samples must be at least 2");
  std::string out = "sigma,phi,psi\n";
  char buf[128];
  for (int j = 0; j < samples; ++j) {
    double s = lo + (hi - lo) * static_cast<double>(j) / (samples - 1);
    auto v = try_phi_psi(inst, s);
    if (v)
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s, v->first, v->second);
    else
      std::snprintf(buf, sizeof buf, "%.17g,nan,nan\n", s);
    out += buf;
  }
  return out;
}

}  // namespace qda
