#pragma once

#include <optional>
#include <string>
#include <vector>

#include "instance.hpp"

namespace qda {

struct Box {
  Vec lo, hi;
};

// Axis-aligned box certified to contain the feasible set, derived from the
// positive definite constraints (each bounds an ellipsoid; the tightest
// intersection is taken and inflated by 1%). Throws NoCompactConstraintError
// when no constraint has positive definite Q.
Box search_box(const ProblemInstance& inst);

struct OracleOptions {
  int grid_points_per_axis = 256;  // at least 64
  int polish_iters = 200;
  double value_tol = 1e-7;  // clusters within this of the best are reported
  std::optional<Box> box;   // override for instances without a compact constraint
};

struct OracleResult {
  double best_value = 0.0;
  // one representative per minimizer cluster, lexicographically ascending
  std::vector<Vec> minimizers;
  double resolution = 0.0;  // grid pitch actually used (max over axes)
  Box box;
};

// Dense feasible-grid scan (n <= 4) followed by projected-descent polish of
// the best seeds and clustering at radius 1e-6. Deterministic.
OracleResult global_min_brute(const ProblemInstance& inst, const OracleOptions& opts = {});
OracleResult global_min_brute(const ProblemInstance& inst, int grid_points_per_axis,
                              int polish_iters = 200, double value_tol = 1e-7);

int count_distinct_minimizers(const ProblemInstance& inst, double value_tol = 1e-7,
                              int grid_points_per_axis = 256);

std::string oracle_result_to_json(const OracleResult& result);

}  // namespace qda
