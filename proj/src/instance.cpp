#include "instance.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "json_util.hpp"
#include "oracle.hpp"

namespace qda {

namespace {

double max_abs_asymmetry(const Mat& M) {
  return (M - M.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace

ProblemInstance::ProblemInstance(Mat A_in, Vec f_in, std::vector<Constraint> cs)
    : A(std::move(A_in)), f(std::move(f_in)), constraints(std::move(cs)) {
  const auto dim = f.size();
  if (dim < 1) throw InputError("instance dimension n must be at least 1");
  if (A.rows() != dim || A.cols() != dim)
    throw InputError("A must be n x n with n = dim(f)");
  if (constraints.empty()) throw InputError("at least one constraint is required");

  asym_A = max_abs_asymmetry(A);
  A = ((A + A.transpose()) / 2.0).eval();

  asym_Q.reserve(constraints.size());
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    Constraint& con = constraints[i];
    if (con.Q.rows() != dim || con.Q.cols() != dim)
      throw InputError("constraint " + std::to_string(i + 1) + ": Q must be n x n");
    if (con.b.size() != dim)
      throw InputError("constraint " + std::to_string(i + 1) + ": b must have length n");
    asym_Q.push_back(max_abs_asymmetry(con.Q));
    con.Q = ((con.Q + con.Q.transpose()) / 2.0).eval();
  }
}

double objective_value(const ProblemInstance& inst, const Vec& x) {
  if (x.size() != inst.n()) throw InputError("objective_value: x has wrong dimension");
  return 0.5 * x.dot(inst.A * x) - inst.f.dot(x);
}

ConstraintValues constraint_values(const ProblemInstance& inst, const Vec& x) {
  if (x.size() != inst.n()) throw InputError("constraint_values: x has wrong dimension");
  ConstraintValues out;
  out.g.resize(inst.m());
  for (int i = 0; i < inst.m(); ++i) {
    const Constraint& con = inst.constraints[i];
    out.g[i] = 0.5 * x.dot(con.Q * x) + con.b.dot(x) - con.c;
  }
  return out;
}

bool is_feasible(const ProblemInstance& inst, const Vec& x, double tol) {
  return constraint_values(inst, x).max_violation() <= tol;
}

namespace {

// max_i g_i(x), the quantity slater_check drives below zero
double worst_constraint(const ProblemInstance& inst, const Vec& x, int* which = nullptr) {
  ConstraintValues cv = constraint_values(inst, x);
  int idx = 0;
  double worst = cv.g[0];
  for (int i = 1; i < inst.m(); ++i)
    if (cv.g[i] > worst) worst = cv.g[i], idx = i;
  if (which) *which = idx;
  return worst;
}

Vec descend_worst_constraint(const ProblemInstance& inst, Vec x) {
  double h = worst_constraint(inst, x);
  for (int it = 0; it < 200; ++it) {
    int active = 0;
    worst_constraint(inst, x, &active);
    const Constraint& con = inst.constraints[active];
    Vec d = -(con.Q * x + con.b);
    double dn = d.norm();
    if (dn < 1e-14) break;
    double alpha = 1.0 / std::max(1.0, dn);
    bool moved = false;
    while (alpha > 1e-16) {
      Vec xt = x + alpha * d;
      double ht = worst_constraint(inst, xt);
      if (ht < h - 1e-12 * (1.0 + std::abs(h))) {
        x = std::move(xt);
        h = ht;
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved) break;
  }
  return x;
}

}  // namespace

SlaterResult slater_check(const ProblemInstance& inst, int attempts) {
  if (attempts < 1) throw InputError("slater_check: attempts must be positive");
  const int n = inst.n();

  Vec lo = Vec::Constant(n, -10.0), hi = Vec::Constant(n, 10.0);
  try {
    Box box = search_box(inst);
    lo = box.lo;
    hi = box.hi;
  } catch (const Error&) {
    // no compact constraint: fall back to a default cube
  }

  std::vector<Vec> starts;
  starts.push_back(Vec::Zero(n));
  starts.push_back(((lo + hi) / 2.0).eval());
  for (const Constraint& con : inst.constraints) {
    Eigen::SelfAdjointEigenSolver<Mat> es(con.Q);
    if (es.eigenvalues().minCoeff() > 0)
      starts.push_back((-con.Q.ldlt().solve(con.b)).eval());  // minimizer of that g_i
  }
  Rng rng(0x51a7e12c9ULL);
  while (static_cast<int>(starts.size()) < attempts) {
    Vec x(n);
    for (int j = 0; j < n; ++j) x[j] = rng.uniform(lo[j], hi[j]);
    starts.push_back(std::move(x));
  }

  SlaterResult best;
  double best_h = std::numeric_limits<double>::infinity();
  for (int a = 0; a < attempts && a < static_cast<int>(starts.size()); ++a) {
    Vec x = descend_worst_constraint(inst, starts[a]);
    double h = worst_constraint(inst, x);
    if (h < best_h) {
      best_h = h;
      best.x0 = x;
    }
  }
  best.found = best_h < 0.0;
  best.margin = best.found ? -best_h : 0.0;
  if (!best.found) best.x0.resize(0);
  return best;
}

std::vector<Violation> validate(const ProblemInstance& inst) {
  std::vector<Violation> out;
  if (inst.asym_A > 1e-12)
    out.push_back({"A", "A asymmetric beyond tolerance", inst.asym_A});
  for (int i = 0; i < inst.m(); ++i) {
    if (inst.asym_Q[i] > 1e-12)
      out.push_back({"constraints[" + std::to_string(i + 1) + "].Q",
                     "Q" + std::to_string(i + 1) + " asymmetric beyond tolerance",
                     inst.asym_Q[i]});
    Eigen::SelfAdjointEigenSolver<Mat> es(inst.constraints[i].Q, Eigen::EigenvaluesOnly);
    double amax = es.eigenvalues().cwiseAbs().maxCoeff();
    double amin = es.eigenvalues().cwiseAbs().minCoeff();
    double ratio = amax > 0 ? amin / amax : 0.0;
    if (ratio <= 1e-10)
      out.push_back({"constraints[" + std::to_string(i + 1) + "].Q",
                     "Q" + std::to_string(i + 1) + " singular", ratio});
  }
  if (inst.f.norm() == 0.0) out.push_back({"f", "f is zero", 0.0});
  return out;
}

namespace {

using nlohmann::json;

double require_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + " must be a number");
  return v.get<double>();
}

Vec parse_vector(const json& v, int n, const std::string& where) {
  if (!v.is_array() || static_cast<int>(v.size()) != n)
    throw ParseError(where + " must be an array of " + std::to_string(n) + " numbers");
  Vec out(n);
  for (int j = 0; j < n; ++j) out[j] = require_number(v[j], where);
  return out;
}

Mat parse_matrix(const json& v, int n, const std::string& where) {
  if (!v.is_array() || static_cast<int>(v.size()) != n)
    throw ParseError(where + " must be an array of " + std::to_string(n) + " rows");
  Mat out(n, n);
  for (int r = 0; r < n; ++r) {
    const json& row = v[r];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError(where + " row " + std::to_string(r) + " must have " +
                       std::to_string(n) + " entries");
    for (int cidx = 0; cidx < n; ++cidx) out(r, cidx) = require_number(row[cidx], where);
  }
  return out;
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok) throw ParseError(where + ": unknown field \"" + it.key() + "\"");
  }
}

}  // namespace

ProblemInstance instance_from_json(const std::string& text, std::string* comment_out) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance must be a JSON object");
  reject_unknown_keys(doc, {"n", "m", "A", "f", "constraints", "comment"}, "instance");
  for (const char* key : {"n", "m", "A", "f", "constraints"})
    if (!doc.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 1)
    throw ParseError("n must be a positive integer");
  if (!doc["m"].is_number_integer() || doc["m"].get<long long>() < 1)
    throw ParseError("m must be a positive integer");
  if (doc.contains("comment") && !doc["comment"].is_string())
    throw ParseError("comment must be a string");
  if (comment_out)
    *comment_out = doc.contains("comment") ? doc["comment"].get<std::string>() : "";

  const int n = doc["n"].get<int>();
  const int m = doc["m"].get<int>();
  if (n > 512 || m > 512) throw ParseError("n and m must be at most 512");

  Mat A = parse_matrix(doc["A"], n, "A");
  Vec f = parse_vector(doc["f"], n, "f");
  if (!doc["constraints"].is_array() || static_cast<int>(doc["constraints"].size()) != m)
    throw ParseError("constraints must be an array of m objects");

  std::vector<Constraint> cs;
  cs.reserve(m);
  for (int i = 0; i < m; ++i) {
    const json& cj = doc["constraints"][i];
    std::string where = "constraints[" + std::to_string(i) + "]";
    if (!cj.is_object()) throw ParseError(where + " must be an object");
    reject_unknown_keys(cj, {"Q", "b", "c"}, where);
    for (const char* key : {"Q", "b", "c"})
      if (!cj.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
    Constraint con;
    con.Q = parse_matrix(cj["Q"], n, where + ".Q");
    con.b = parse_vector(cj["b"], n, where + ".b");
    con.c = require_number(cj["c"], where + ".c");
    cs.push_back(std::move(con));
  }
  return ProblemInstance(std::move(A), std::move(f), std::move(cs));
}

std::string instance_to_json(const ProblemInstance& inst, const std::string& comment) {
  OrderedJson doc;
  doc["n"] = inst.n();
  doc["m"] = inst.m();
  OrderedJson arows = OrderedJson::array();
  for (int r = 0; r < inst.n(); ++r) {
    OrderedJson row = OrderedJson::array();
    for (int c = 0; c < inst.n(); ++c) row.push_back(inst.A(r, c));
    arows.push_back(std::move(row));
  }
  doc["A"] = std::move(arows);
  OrderedJson fv = OrderedJson::array();
  for (int j = 0; j < inst.n(); ++j) fv.push_back(inst.f[j]);
  doc["f"] = std::move(fv);
  OrderedJson cons = OrderedJson::array();
  for (const Constraint& con : inst.constraints) {
    OrderedJson cj;
    OrderedJson qrows = OrderedJson::array();
    for (int r = 0; r < inst.n(); ++r) {
      OrderedJson row = OrderedJson::array();
      for (int c = 0; c < inst.n(); ++c) row.push_back(con.Q(r, c));
      qrows.push_back(std::move(row));
    }
    cj["Q"] = std::move(qrows);
    OrderedJson bv = OrderedJson::array();
    for (int j = 0; j < inst.n(); ++j) bv.push_back(con.b[j]);
    cj["b"] = std::move(bv);
    cj["c"] = con.c;
    cons.push_back(std::move(cj));
  }
  doc["constraints"] = std::move(cons);
  if (!comment.empty()) doc["comment"] = comment;
  return dump_json(doc);
}

ProblemInstance builtin_example(int which) {
  switch (which) {
    case 1: {
      Mat A(1, 1), Q(1, 1);
      A << -2.0;
      Q << 2.0;
      Vec f(1), b(1);
      f << -2.0;
      b << -2.0;
      return ProblemInstance(A, f, {{Q, b, 0.0}});
    }
    case 2: {
      Mat A(1, 1), Q(1, 1);
      A << -2.0;
      Q << 1.0;
      Vec f(1), b(1);
      f << 1.0;
      b << 1.0;
      return ProblemInstance(A, f, {{Q, b, 0.0}});
    }
    case 3: {
      Mat A(2, 2), Q(2, 2);
      A << 1.0, 0.0, 0.0, -1.0;
      Q << 4.0, 0.0, 0.0, 4.0;
      Vec f(2), b(2);
      f << std::sqrt(27.0), 1.0;
      b << 0.0, 0.0;
      return ProblemInstance(A, f, {{Q, b, 52.0}});
    }
    default:
      throw InputError("builtin_example: index must be 1, 2, or 3");
  }
}

std::string builtin_example_comment(int which) {
  switch (which) {
    case 1:
      return "objective and constraint function sum to zero everywhere; every boundary "
             "point of the feasible interval minimizes";
    case 2:
      return "one-dimensional instance whose dual maximum over the feasible-multiplier "
             "set sits at sigma = 0";
    case 3:
      return "two-dimensional ball constraint; f[0] is sqrt(27) evaluated in double "
             "precision";
    default:
      throw InputError("builtin_example_comment: index must be 1, 2, or 3");
  }
}

}  // namespace qda
