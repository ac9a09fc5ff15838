#pragma once

#include <vector>

#include "hsvp/hierarchy.hpp"

namespace hsvp {

/// Normalization tolerance accepted on construction.
inline constexpr double kInputTolerance = 1e-9;
/// Tolerance for internal algebraic identities (round trips, chain products).
inline constexpr double kIdentityTolerance = 1e-12;

/// Conditional class distribution as a flat probability vector over K classes.
struct FlatDistribution {
  std::vector<double> probs;

  /// Validates entries in [0, 1] and sum within kInputTolerance of 1.
  static FlatDistribution validated(std::vector<double> p);

  int class_count() const noexcept { return static_cast<int>(probs.size()); }
};

/// Per-node child conditionals realizing the hierarchical factorization:
/// child_cond[v][i] = P(children_of(v)[i] | v, x). Leaves carry empty rows.
struct HierarchicalDistribution {
  std::vector<std::vector<double>> child_cond;

  /// Validates shape against h and each row's normalization.
  static HierarchicalDistribution validated(const Hierarchy& h,
                                            std::vector<std::vector<double>> cc);
};

/// Probability mass per hierarchy node.
struct NodeMasses {
  std::vector<double> mass;
};

/// Sum of class probabilities over y's members; 0 for the empty set.
double set_mass(const FlatDistribution& d, const ClassSet& y);

/// Product of child conditionals along the root-to-v path; 1 for the root.
double node_mass_chain(const Hierarchy& h, const HierarchicalDistribution& d, int v);

/// Derives child conditionals from leaf sums: cond = child mass / parent
/// mass, with the uniform conditional where the parent mass is zero.
HierarchicalDistribution flat_to_hier(const Hierarchy& h, const FlatDistribution& d);

/// Leaf masses via the chain products; inverse of flat_to_hier off the zero set.
FlatDistribution hier_to_flat(const Hierarchy& h, const HierarchicalDistribution& d);

/// Mass of every node from one pass over leaf prefix sums.
NodeMasses all_node_masses(const Hierarchy& h, const FlatDistribution& d);

}  // namespace hsvp
