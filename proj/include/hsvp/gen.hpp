#pragma once

#include <cstdint>
#include <random>

#include "hsvp/prob.hpp"

namespace hsvp {

/// Deterministic random source. All samplers are implemented on top of the
/// raw 64-bit stream so that a given seed yields the same draws on every
/// platform (the standard distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }
  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform01();
  /// Uniform integer in [0, n), unbiased.
  std::uint64_t below(std::uint64_t n);
  double normal01();
  /// Marsaglia-Tsang gamma(alpha, 1), alpha > 0.
  double gamma(double alpha);
  std::vector<double> dirichlet(int k, double alpha);

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Random hierarchy over K classes from recursive range splits. Child counts
/// are drawn uniformly from [2, max(2, round(2*branching) - 2)] (clamped to
/// the range width), so the mean branching factor tracks `branching`; every
/// internal node gets at least two children. Node ids are assigned in
/// preorder, 1-based.
Hierarchy random_hierarchy(int class_count, double branching, Rng& rng);

/// Balanced binary splits (halves rounded up); no randomness.
Hierarchy balanced_binary_hierarchy(int class_count);

/// Symmetric Dirichlet(alpha) draw over K classes.
FlatDistribution random_flat(int class_count, double alpha, Rng& rng);

/// Samples a class index from d (inverse CDF walk).
int sample_class(const FlatDistribution& d, Rng& rng);

}  // namespace hsvp
