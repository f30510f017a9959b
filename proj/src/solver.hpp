#pragma once

#include <cstdint>
#include <vector>

#include "regions.hpp"

namespace qda {

enum class SolveMethod { Exact1D, Multistart };

struct Maximizer {
  Vec sigma;
  double value = 0.0;
  bool in_S_plus = false;
};

struct DualSolveResult {
  // nonempty exactly when attained; ties within 1e-8 of the best are all kept,
  // sorted by value descending then sigma ascending
  std::vector<Maximizer> maximizers;
  bool attained = false;
  double sup_estimate = kNegInfinity;
  SolveMethod method = SolveMethod::Exact1D;
};

// Maximize the dual over Y = { sigma in S : x(sigma) primal feasible }.
// Exact interval analysis for m = 1; throws EmptyYError when Y is empty.
DualSolveResult maximize_over_Y_1d(const ProblemInstance& inst);

// Projected gradient ascent from `starts` feasible seeds; deterministic for a
// fixed (starts, seed). The result is a lower bound on the supremum.
DualSolveResult maximize_over_Y_multistart(const ProblemInstance& inst, int starts,
                                           std::uint64_t seed);

// Dispatches on m: exact for one constraint, multistart otherwise.
DualSolveResult maximize_over_Y(const ProblemInstance& inst, int starts = 32,
                                std::uint64_t seed = 0);

// Same machinery over S_plus = { sigma >= 0 : G(sigma) positive definite }.
// Exact for m = 1. Throws EmptySPlusError when the region is empty.
DualSolveResult maximize_over_S_plus(const ProblemInstance& inst, int starts = 32,
                                     std::uint64_t seed = 0);

}  // namespace qda
