#pragma once

#include <optional>
#include <string_view>

#include "hsvp/eval.hpp"
#include "hsvp/prediction.hpp"
#include "hsvp/solver_kcg.hpp"
#include "hsvp/solver_mvm.hpp"
#include "hsvp/solver_rts.hpp"

namespace hsvp {

enum class SolverKind { Mvm, Kcg, Rts, Oracle };

std::optional<SolverKind> parse_solver(std::string_view name);
std::string_view solver_name(SolverKind kind);

struct BatchOptions {
  /// 1 runs the serial reference path; 0 lets OpenMP pick; >1 caps threads.
  int workers = 1;
  bool check_disjoint = false;
};

/// Runs one solver over a batch of flat distributions and returns the
/// predictions in input order. Shared structures (feasible matrix, conflict
/// graph, weights) are built once up front; per-instance work is independent.
///
/// Each prediction's time_us covers the solver from its native model output:
/// the flat probability vector for mvm/kcg/oracle (for kcg that includes the
/// per-instance node-mass aggregation and the sort), the per-node
/// conditionals for rts — the flat-to-hierarchical conversion is input
/// preparation and stays outside the timer.
std::vector<Prediction> run_batch(SolverKind kind, const Hierarchy& h,
                                  const std::vector<FlatDistribution>& rows, Budgets b,
                                  const BatchOptions& opt = {});

/// Plain loop, no OpenMP. Reference implementation for the parallel path.
std::vector<Prediction> run_batch_serial(SolverKind kind, const Hierarchy& h,
                                         const std::vector<FlatDistribution>& rows, Budgets b,
                                         const BatchOptions& opt = {});

/// OpenMP over instances. Identical output to the serial path.
std::vector<Prediction> run_batch_parallel(SolverKind kind, const Hierarchy& h,
                                           const std::vector<FlatDistribution>& rows, Budgets b,
                                           const BatchOptions& opt = {});

}  // namespace hsvp
