#pragma once

#include <string>
#include <vector>

#include "types.hpp"

namespace qda {

struct Constraint {
  Mat Q;  // symmetric, expected nonsingular
  Vec b;
  double c = 0.0;
};

// Minimize 1/2 x'Ax - f'x subject to 1/2 x'Q_i x + b_i'x - c_i <= 0.
// A and Q_i are symmetrized on construction; the pre-symmetrization
// asymmetry is recorded so validate() can flag lopsided input.
struct ProblemInstance {
  Mat A;
  Vec f;
  std::vector<Constraint> constraints;

  double asym_A = 0.0;
  std::vector<double> asym_Q;

  ProblemInstance(Mat A_in, Vec f_in, std::vector<Constraint> cs);

  int n() const { return static_cast<int>(f.size()); }
  int m() const { return static_cast<int>(constraints.size()); }
};

struct ConstraintValues {
  Vec g;  // g_i(x), one per constraint
  double max_violation() const { return g.size() ? g.maxCoeff() : 0.0; }
};

inline constexpr double kFeasTol = 1e-9;

double objective_value(const ProblemInstance& inst, const Vec& x);
ConstraintValues constraint_values(const ProblemInstance& inst, const Vec& x);
bool is_feasible(const ProblemInstance& inst, const Vec& x, double tol = kFeasTol);

struct SlaterResult {
  bool found = false;
  Vec x0;             // strictly feasible point when found
  double margin = 0;  // -max_i g_i(x0) when found
};

// Local searches from several starts for a strictly interior point.
// Not finding one is inconclusive, not a proof of emptiness.
SlaterResult slater_check(const ProblemInstance& inst, int attempts = 32);

struct Violation {
  std::string field;
  std::string message;
  double measured = 0.0;
};

std::vector<Violation> validate(const ProblemInstance& inst);

// Strict schema: {"n","m","A","f","constraints"} with an optional trailing
// "comment" string; anything else is rejected.
ProblemInstance instance_from_json(const std::string& text,
                                   std::string* comment_out = nullptr);
std::string instance_to_json(const ProblemInstance& inst, const std::string& comment = {});

// Bundled demonstration instances 1..3 (see README).
ProblemInstance builtin_example(int which);
std::string builtin_example_comment(int which);

}  // namespace qda
