#pragma once

#include <cstdint>
#include <memory>

#include "hsvp/prediction.hpp"
#include "hsvp/prob.hpp"

namespace hsvp {

/// Undirected conflict relation between hierarchy nodes with overlapping
/// leaf sets — on a tree, exactly the ancestor-descendant pairs.
struct ConflictGraph {
  std::vector<std::pair<int, int>> edges;  // (ancestor, descendant), sorted
};

ConflictGraph build_conflict_graph(const Hierarchy& h);

struct IlpDims {
  std::uint64_t rows = 0;  // 2 + |edges|
  std::uint64_t cols = 0;  // node count
};

/// Shape of the constraint matrix [1, w, e_1, ..., e_E]^T: one row for the
/// node-count budget, one for the weight budget, one per conflict edge.
IlpDims ilp_dimensions(const Hierarchy& h);

/// One knapsack-with-conflict-graph instance: per-node masses and weights
/// (leaf counts) plus the budgets. The conflict graph is shared immutable
/// state; the solver itself tests conflicts through leaf intervals, the edge
/// list is kept for reporting and inspection.
struct KcgInstance {
  const Hierarchy* hierarchy = nullptr;
  std::vector<double> item_mass;
  std::vector<int> item_weight;
  std::shared_ptr<const ConflictGraph> conflicts;
  Budgets budgets;
};

KcgInstance build_kcg_instance(const Hierarchy& h, const NodeMasses& masses, Budgets b);
KcgInstance build_kcg_instance(const Hierarchy& h, const FlatDistribution& d, Budgets b);

struct KcgOptions {
  /// Disables the mass upper bound, degrading the search to exhaustive
  /// depth-first enumeration. Test hook for bound-soundness checks.
  bool use_bound = true;
};

struct KcgSolution {
  Prediction prediction;
  std::vector<int> selected_nodes;  // sorted by leaf-interval start
};

/// Exact depth-first branch-and-bound over items sorted by mass descending
/// (ties by node index). Returns n = ILP rows*cols and the node count of the
/// search in Prediction::search_nodes; the first optimum found under the
/// deterministic order wins ties.
KcgSolution solve_kcg_detailed(const KcgInstance& inst, KcgOptions opt = {});

inline Prediction solve_kcg(const KcgInstance& inst, KcgOptions opt = {}) {
  return solve_kcg_detailed(inst, opt).prediction;
}

}  // namespace hsvp
