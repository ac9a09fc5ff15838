#pragma once

#include <string>

#include "hsvp/prediction.hpp"
#include "hsvp/prob.hpp"

namespace hsvp {

/// One benchmark table row: recall, average prediction size, average solve
/// time and average complexity counter for a (solver, r, k) cell.
struct MetricsRow {
  std::string solver;
  int r = 0;
  int k = 0;
  std::uint64_t instances = 0;
  double recall = 0.0;
  double avg_set_size = 0.0;
  double avg_time_us = 0.0;
  double avg_n = 0.0;
};

/// Reference solver: exhaustive search over all non-empty class subsets,
/// filtered by both budgets. Ties go to the lexicographically smallest
/// member list; n = 2^K - 1. Requires K <= 16.
Prediction oracle_solve(const Hierarchy& h, const FlatDistribution& d, Budgets b);

/// Aggregates predictions against true class labels. A label of -1 means
/// unknown and counts as a miss. Throws LengthMismatch / EmptyBatch.
MetricsRow evaluate(const std::string& solver_tag, Budgets b,
                    const std::vector<Prediction>& preds, const std::vector<int>& truths);

}  // namespace hsvp
