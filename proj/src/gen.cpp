#include "hsvp/gen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hsvp {

double Rng::uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) raise(Errc::InvalidArgument, "below(0)");
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % n;
  std::uint64_t x;
  do {
    x = eng_();
  } while (x >= limit);
  return x % n;
}

double Rng::normal01() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller; u clamped away from 0 so log stays finite
  constexpr double two_pi = 6.28318530717958647692;
  double u = uniform01();
  if (u <= 0.0) u = 0x1.0p-53;
  double v = uniform01();
  double radius = std::sqrt(-2.0 * std::log(u));
  double angle = two_pi * v;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

double Rng::gamma(double alpha) {
  if (alpha <= 0.0) raise(Errc::InvalidArgument, "gamma shape must be positive");
  if (alpha < 1.0) {
    // boost: gamma(a) = gamma(a + 1) * U^(1/a)
    double u = uniform01();
    if (u <= 0.0) u = 0x1.0p-53;
    return gamma(alpha + 1.0) * std::pow(u, 1.0 / alpha);
  }
  const double d = alpha - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = normal01();
    double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    double v = t * t * t;
    double u = uniform01();
    if (u <= 0.0) u = 0x1.0p-53;
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
  }
}

std::vector<double> Rng::dirichlet(int k, double alpha) {
  std::vector<double> out(static_cast<std::size_t>(k));
  double sum = 0.0;
  for (auto& x : out) {
    x = gamma(alpha);
    sum += x;
  }
  if (sum <= 0.0) {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(k));
    return out;
  }
  for (auto& x : out) x /= sum;
  return out;
}

namespace {

struct TreeBuilder {
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;

  std::int64_t add(std::int64_t parent) {
    std::int64_t id = static_cast<std::int64_t>(edges.size()) + 1;
    edges.emplace_back(id, parent);
    return id;
  }
};

void split_random(TreeBuilder& tb, std::int64_t parent, int width, int max_children, Rng& rng) {
  std::int64_t node = tb.add(parent);
  if (width == 1) return;
  int cmax = std::min(width, max_children);
  int children = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cmax - 1)));
  // children - 1 distinct cut points over [1, width)
  std::vector<int> cuts;
  while (static_cast<int>(cuts.size()) < children - 1) {
    int cut = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(width - 1)));
    if (std::find(cuts.begin(), cuts.end(), cut) == cuts.end()) cuts.push_back(cut);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(width);
  int lo = 0;
  for (int cut : cuts) {
    split_random(tb, node, cut - lo, max_children, rng);
    lo = cut;
  }
}

void split_balanced(TreeBuilder& tb, std::int64_t parent, int width) {
  std::int64_t node = tb.add(parent);
  if (width == 1) return;
  int half = (width + 1) / 2;
  split_balanced(tb, node, half);
  split_balanced(tb, node, width - half);
}

}  // namespace

Hierarchy random_hierarchy(int class_count, double branching, Rng& rng) {
  if (class_count < 2) raise(Errc::InvalidArgument, "need at least 2 classes");
  if (branching < 2.0) raise(Errc::InvalidArgument, "branching factor must be >= 2");
  int max_children = std::max(2, static_cast<int>(std::llround(2.0 * branching)) - 2);
  TreeBuilder tb;
  split_random(tb, 0, class_count, max_children, rng);
  return Hierarchy::from_edges(tb.edges);
}

Hierarchy balanced_binary_hierarchy(int class_count) {
  if (class_count < 2) raise(Errc::InvalidArgument, "need at least 2 classes");
  TreeBuilder tb;
  split_balanced(tb, 0, class_count);
  return Hierarchy::from_edges(tb.edges);
}

FlatDistribution random_flat(int class_count, double alpha, Rng& rng) {
  if (class_count < 1) raise(Errc::InvalidArgument, "need at least 1 class");
  if (alpha <= 0.0) raise(Errc::InvalidArgument, "dirichlet alpha must be positive");
  return FlatDistribution::validated(rng.dirichlet(class_count, alpha));
}

int sample_class(const FlatDistribution& d, Rng& rng) {
  double u = rng.uniform01();
  double acc = 0.0;
  for (int c = 0; c < d.class_count(); ++c) {
    acc += d.probs[static_cast<std::size_t>(c)];
    if (u < acc) return c;
  }
  return d.class_count() - 1;
}

}  // namespace hsvp
