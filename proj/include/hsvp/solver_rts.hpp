#pragma once

#include <cstdint>

#include "hsvp/prediction.hpp"
#include "hsvp/prob.hpp"

namespace hsvp {

struct QueueEntry {
  int node = 0;
  double mass = 0.0;
};

/// Max-priority queue over (node, mass) entries: mass descending, ties by
/// node index ascending. Value semantics — copying yields an independent
/// snapshot, which is exactly what the recursive search relies on.
class SearchQueue {
 public:
  void push(QueueEntry e);
  QueueEntry pop();
  bool empty() const noexcept { return heap_.empty(); }
  std::size_t size() const noexcept { return heap_.size(); }

 private:
  std::vector<QueueEntry> heap_;
};

struct RtsOptions {
  /// Verifies on every pop that the popped node is leaf-disjoint from the
  /// partial solution (mass additivity holds by that disjointness). Throws
  /// std::logic_error on violation. Defaults on in debug builds.
#ifdef NDEBUG
  bool check_disjoint = false;
#else
  bool check_disjoint = true;
#endif
};

/// Best-first recursive tree search over the hierarchical factorization.
/// Starts from (root, 1); each level pops nodes in decreasing mass order,
/// extends the partial solution when the size budget allows, recurses with a
/// queue snapshot while complexity budget remains, and stops a level at the
/// first leaf pop. n counts pops across all recursion levels.
Prediction solve_rts(const Hierarchy& h, const HierarchicalDistribution& d, Budgets b,
                     RtsOptions opt = {});

struct PopCountReport {
  std::uint64_t pops = 0;
  /// (ceil(log2 K))^r — the complete-binary-tree pop bound, reported for
  /// side-by-side inspection, never asserted.
  std::uint64_t depth_bound = 0;
};

PopCountReport pop_count_report(const Hierarchy& h, const HierarchicalDistribution& d, Budgets b);

}  // namespace hsvp
