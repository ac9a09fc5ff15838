#include "hsvp/eval.hpp"

#include <algorithm>
#include <bit>
#include <chrono>

namespace hsvp {

Prediction oracle_solve(const Hierarchy& h, const FlatDistribution& d, Budgets b) {
  const int k = h.class_count();
  if (k > 16)
    raise(Errc::TooLarge, "exhaustive oracle limited to 16 classes, got " + std::to_string(k));
  if (d.class_count() != k)
    raise(Errc::DimensionMismatch, "distribution does not match hierarchy");
  if (b.r < 1 || b.k < 1)
    raise(Errc::InfeasibleBudget, "budgets must satisfy r >= 1 and k >= 1");

  const auto start = std::chrono::steady_clock::now();

  const std::uint32_t total = 1u << k;
  std::vector<int> scratch;
  ClassSet best_set;
  double best_mass = -1.0;
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    if (std::popcount(mask) > b.k) continue;
    scratch.clear();
    double mass = 0.0;
    for (int c = 0; c < k; ++c)
      if (mask & (1u << c)) {
        scratch.push_back(c);
        mass += d.probs[static_cast<std::size_t>(c)];
      }
    ClassSet y{scratch};
    if (min_cover(h, y).complexity > b.r) continue;
    if (mass > best_mass || (mass == best_mass && y.members < best_set.members)) {
      best_set = std::move(y);
      best_mass = mass;
    }
  }

  Prediction pred;
  pred.set = std::move(best_set);
  pred.mass = best_mass;
  pred.n = static_cast<std::uint64_t>(total) - 1;
  pred.time_us = std::chrono::duration_cast<std::chrono::microseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  return pred;
}

MetricsRow evaluate(const std::string& solver_tag, Budgets b,
                    const std::vector<Prediction>& preds, const std::vector<int>& truths) {
  if (preds.size() != truths.size())
    raise(Errc::LengthMismatch, std::to_string(preds.size()) + " predictions vs " +
                                    std::to_string(truths.size()) + " labels");
  if (preds.empty()) raise(Errc::EmptyBatch, "nothing to evaluate");

  MetricsRow row;
  row.solver = solver_tag;
  row.r = b.r;
  row.k = b.k;
  row.instances = preds.size();
  double hits = 0.0, size_sum = 0.0, time_sum = 0.0, n_sum = 0.0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (truths[i] >= 0 && preds[i].set.contains(truths[i])) hits += 1.0;
    size_sum += static_cast<double>(preds[i].set.size());
    time_sum += static_cast<double>(preds[i].time_us);
    n_sum += static_cast<double>(preds[i].n);
  }
  const auto count = static_cast<double>(preds.size());
  row.recall = hits / count;
  row.avg_set_size = size_sum / count;
  row.avg_time_us = time_sum / count;
  row.avg_n = n_sum / count;
  return row;
}

}  // namespace hsvp
