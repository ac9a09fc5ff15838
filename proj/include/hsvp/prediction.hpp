#pragma once

#include <cstdint>

#include "hsvp/hierarchy.hpp"

namespace hsvp {

/// Solver output: the predicted class set, its probability mass, the
/// solver-specific complexity counter n (feasible-set size for mvm, ILP
/// rows*cols for kcg, queue pops for rts, 2^K - 1 for the oracle), and the
/// solve time. search_nodes carries the branch-and-bound node count for kcg
/// and is zero elsewhere.
struct Prediction {
  ClassSet set;
  double mass = 0.0;
  std::uint64_t n = 0;
  std::int64_t time_us = 0;
  std::uint64_t search_nodes = 0;
};

}  // namespace hsvp
