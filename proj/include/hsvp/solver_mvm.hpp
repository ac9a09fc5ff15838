#pragma once

#include <cstdint>

#include "hsvp/prediction.hpp"
#include "hsvp/prob.hpp"

namespace hsvp {

/// Binary incidence matrix over the feasible set: one row per feasible class
/// set (in enumerate_feasible order), one column per class. Rows are sparse
/// (at most k ones each) and stored compressed; incidence(i, j) realizes the
/// logical |feasible| x K 0/1 matrix.
class FeasibleMatrix {
 public:
  std::uint64_t rows() const noexcept { return row_offsets_.size() - 1; }
  int cols() const noexcept { return cols_; }
  Budgets budgets() const noexcept { return budgets_; }

  bool incidence(std::uint64_t i, int j) const;
  ClassSet row_set(std::uint64_t i) const;

  friend FeasibleMatrix build_matrix(const Hierarchy& h, Budgets b, std::uint64_t guard);
  friend Prediction solve_mvm(const FeasibleMatrix& m, const FlatDistribution& d);

 private:
  std::vector<std::uint64_t> row_offsets_;
  std::vector<std::int32_t> row_classes_;
  int cols_ = 0;
  Budgets budgets_;
};

/// Materializes the incidence matrix of the feasible set for budgets b.
/// Throws TooLarge when the feasible set exceeds the enumeration guard.
FeasibleMatrix build_matrix(const Hierarchy& h, Budgets b, std::uint64_t guard = enum_guard());

/// Computes the full matrix-vector product, then scans for the maximum.
/// Ties go to the earliest row in enumeration order; n is the row count.
Prediction solve_mvm(const FeasibleMatrix& m, const FlatDistribution& d);

}  // namespace hsvp
