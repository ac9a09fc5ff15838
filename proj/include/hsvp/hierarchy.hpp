#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hsvp/error.hpp"

namespace hsvp {

/// Set of class indices, kept sorted and duplicate-free.
struct ClassSet {
  std::vector<int> members;

  static ClassSet of(std::vector<int> xs);

  bool empty() const noexcept { return members.empty(); }
  std::size_t size() const noexcept { return members.size(); }
  bool contains(int c) const;

  friend auto operator<=>(const ClassSet&, const ClassSet&) = default;
};

/// Budgets on representation complexity (r) and set size (k).
struct Budgets {
  int r = 1;
  int k = 1;
};

/// Half-open range of class indices [lo, hi) in depth-first leaf order.
struct Interval {
  int lo = 0;
  int hi = 0;

  int width() const noexcept { return hi - lo; }
  friend bool operator==(Interval, Interval) = default;
};

inline bool disjoint(Interval a, Interval b) noexcept { return a.hi <= b.lo || b.hi <= a.lo; }
inline bool contains(Interval outer, Interval inner) noexcept {
  return outer.lo <= inner.lo && inner.hi <= outer.hi;
}

/// A set of pairwise-disjoint hierarchy nodes whose leaf sets union to some
/// class set; complexity is the node count.
struct Cover {
  std::vector<int> nodes;  // sorted by leaf-interval start
  int complexity = 0;
};

/// Rooted class hierarchy over K leaf classes and M nodes total.
///
/// Nodes are addressed by their declaration index (0-based, declaration
/// order); external ids and names from the input are retained for IO.
/// Every node's leaf set is the contiguous interval of class indices below
/// it, so subset and disjointness tests are O(1). Immutable once built and
/// safe to share across threads.
class Hierarchy {
 public:
  /// Builds and validates a hierarchy from (child id, parent id) pairs.
  /// The root is the unique node whose parent id is 0. Children are ordered
  /// by declaration; class index of a leaf is its rank in the depth-first
  /// leaf order induced by that ordering.
  static Hierarchy from_edges(const std::vector<std::pair<std::int64_t, std::int64_t>>& edges,
                              std::vector<std::string> names = {});

  int node_count() const noexcept { return static_cast<int>(parent_.size()); }
  int class_count() const noexcept { return class_count_; }
  int root() const noexcept { return root_; }

  int parent_of(int v) const { return parent_.at(static_cast<std::size_t>(v)); }
  const std::vector<int>& children_of(int v) const {
    return children_.at(static_cast<std::size_t>(v));
  }
  Interval leaf_interval(int v) const { return interval_.at(static_cast<std::size_t>(v)); }
  bool is_leaf(int v) const { return children_of(v).empty(); }
  int node_weight(int v) const { return leaf_interval(v).width(); }
  int depth(int v) const { return depth_.at(static_cast<std::size_t>(v)); }
  /// Position of v in its parent's children list (0 for the root).
  int child_pos(int v) const { return child_pos_.at(static_cast<std::size_t>(v)); }

  std::int64_t node_id(int v) const { return ids_.at(static_cast<std::size_t>(v)); }
  const std::string& node_name(int v) const { return names_.at(static_cast<std::size_t>(v)); }
  int leaf_of_class(int c) const { return class_to_leaf_.at(static_cast<std::size_t>(c)); }

  /// Leaf classes below v, ascending.
  ClassSet leaf_set(int v) const;

 private:
  Hierarchy() = default;

  int class_count_ = 0;
  int root_ = -1;
  std::vector<int> parent_;  // -1 for the root
  std::vector<std::vector<int>> children_;
  std::vector<Interval> interval_;
  std::vector<int> depth_;
  std::vector<int> child_pos_;
  std::vector<std::int64_t> ids_;
  std::vector<std::string> names_;
  std::vector<int> class_to_leaf_;
};

/// Minimum-cardinality set of pairwise-disjoint nodes whose leaf sets union
/// to y. Unique on trees: it consists of the maximal nodes contained in y.
/// Throws EmptySet for the empty set (complexity undefined there).
Cover min_cover(const Hierarchy& h, const ClassSet& y);

struct OracleCover {
  Cover cover;
  std::uint64_t cover_count = 0;  // number of disjoint node covers of y
};

/// Exhaustively enumerates every disjoint node cover of y and returns a
/// minimum one plus the total count. Reference implementation for tests;
/// refuses hierarchies with more than 24 nodes.
OracleCover min_cover_oracle(const Hierarchy& h, const ClassSet& y);

/// All non-empty class sets with representation complexity exactly r,
/// sorted lexicographically by member list. Requires K <= 12.
std::vector<ClassSet> enumerate_complexity_class(const Hierarchy& h, int r);

/// Size guard for feasible-set enumeration: HSVP_ENUM_GUARD if set, else 1e7.
std::uint64_t enum_guard();

/// All non-empty class sets with complexity <= b.r and size <= b.k, sorted
/// lexicographically by member list. Enumerates unions of at most r
/// pairwise-disjoint nodes with total weight <= k, then deduplicates.
/// Throws TooLarge when the result would exceed `guard` distinct sets (the
/// enumeration also aborts once intermediate combinations exceed 4x guard).
std::vector<ClassSet> enumerate_feasible(const Hierarchy& h, Budgets b,
                                         std::uint64_t guard = enum_guard());

}  // namespace hsvp
