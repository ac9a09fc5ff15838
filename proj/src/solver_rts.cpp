#include "hsvp/solver_rts.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <limits>
#include <stdexcept>

namespace hsvp {

namespace {

// max-heap order: higher mass first, then lower node index
inline bool heap_before(const QueueEntry& a, const QueueEntry& b) {
  if (a.mass != b.mass) return a.mass < b.mass;
  return a.node > b.node;
}

}  // namespace

void SearchQueue::push(QueueEntry e) {
  heap_.push_back(e);
  std::push_heap(heap_.begin(), heap_.end(), heap_before);
}

QueueEntry SearchQueue::pop() {
  if (heap_.empty()) raise(Errc::InvalidArgument, "pop from empty queue");
  std::pop_heap(heap_.begin(), heap_.end(), heap_before);
  QueueEntry e = heap_.back();
  heap_.pop_back();
  return e;
}

namespace {

struct RtsSearch {
  const Hierarchy& h;
  const HierarchicalDistribution& d;
  Budgets b;
  RtsOptions opt;

  std::uint64_t pops = 0;
  std::vector<int> partial;          // nodes of the current partial solution
  std::vector<Interval> partial_ivs;
  int partial_size = 0;
  double partial_mass = 0.0;

  std::vector<int> best;
  double best_mass = 0.0;

  void find(int depth_remaining, SearchQueue queue) {
    while (!queue.empty()) {
      QueueEntry top = queue.pop();
      ++pops;
      Interval iv = h.leaf_interval(top.node);
      if (opt.check_disjoint) {
        for (Interval s : partial_ivs)
          if (!disjoint(s, iv))
            throw std::logic_error("rts: popped node overlaps the partial solution");
      }
      const int candidate_size = partial_size + iv.width();
      const double candidate_mass = partial_mass + top.mass;
      if (candidate_size <= b.k) {
        if (candidate_mass >= best_mass) {  // >= : the last equal-mass candidate wins
          best = partial;
          best.push_back(top.node);
          best_mass = candidate_mass;
        }
        if (depth_remaining > 1) {
          if (candidate_size != b.k) {
            partial.push_back(top.node);
            partial_ivs.push_back(iv);
            partial_size = candidate_size;
            partial_mass = candidate_mass;
            find(depth_remaining - 1, queue);  // by-value: queue snapshot
            partial.pop_back();
            partial_ivs.pop_back();
            partial_size -= iv.width();
            partial_mass -= top.mass;
          }
        } else {
          break;  // deepest level: no later pop at this level can do better
        }
      }
      if (!h.is_leaf(top.node)) {
        const auto& ch = h.children_of(top.node);
        const auto& cond = d.child_cond[static_cast<std::size_t>(top.node)];
        for (std::size_t i = 0; i < ch.size(); ++i)
          queue.push(QueueEntry{ch[i], top.mass * cond[i]});
      } else {
        break;  // all remaining entries are at most this leaf's mass
      }
    }
  }
};

std::uint64_t pow_saturating(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base)
      return std::numeric_limits<std::uint64_t>::max();
    out *= base;
  }
  return out;
}

}  // namespace

Prediction solve_rts(const Hierarchy& h, const HierarchicalDistribution& d, Budgets b,
                     RtsOptions opt) {
  if (b.k < 1 || b.r < 1)
    raise(Errc::InfeasibleBudget, "budgets must satisfy r >= 1 and k >= 1");
  if (static_cast<int>(d.child_cond.size()) != h.node_count())
    raise(Errc::DimensionMismatch, "conditionals must match node count");

  const auto start = std::chrono::steady_clock::now();

  RtsSearch search{h, d, b, opt, 0, {}, {}, 0, 0.0, {}, 0.0};
  SearchQueue queue;
  queue.push(QueueEntry{h.root(), 1.0});
  search.find(b.r, std::move(queue));

  Prediction pred;
  std::sort(search.best.begin(), search.best.end(),
            [&](int a, int c) { return h.leaf_interval(a).lo < h.leaf_interval(c).lo; });
  for (int v : search.best) {
    Interval iv = h.leaf_interval(v);
    for (int c = iv.lo; c < iv.hi; ++c) pred.set.members.push_back(c);
  }
  pred.mass = search.best_mass;
  pred.n = search.pops;
  pred.time_us = std::chrono::duration_cast<std::chrono::microseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  return pred;
}

PopCountReport pop_count_report(const Hierarchy& h, const HierarchicalDistribution& d, Budgets b) {
  Prediction pred = solve_rts(h, d, b);
  PopCountReport report;
  report.pops = pred.n;
  const auto k = static_cast<std::uint64_t>(h.class_count());
  const int ceil_log2 = k <= 1 ? 0 : std::bit_width(k - 1);
  report.depth_bound = pow_saturating(static_cast<std::uint64_t>(ceil_log2), b.r);
  return report;
}

}  // namespace hsvp
