#include "hsvp/solver_kcg.hpp"

#include <algorithm>
#include <chrono>

namespace hsvp {

ConflictGraph build_conflict_graph(const Hierarchy& h) {
  ConflictGraph g;
  // ancestor-descendant pairs: walk each node's parent chain
  for (int v = 0; v < h.node_count(); ++v)
    for (int a = h.parent_of(v); a != -1; a = h.parent_of(a)) g.edges.emplace_back(a, v);
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

IlpDims ilp_dimensions(const Hierarchy& h) {
  std::uint64_t edge_count = 0;
  for (int v = 0; v < h.node_count(); ++v) edge_count += static_cast<std::uint64_t>(h.depth(v));
  return IlpDims{2 + edge_count, static_cast<std::uint64_t>(h.node_count())};
}

KcgInstance build_kcg_instance(const Hierarchy& h, const NodeMasses& masses, Budgets b) {
  if (static_cast<int>(masses.mass.size()) != h.node_count())
    raise(Errc::DimensionMismatch, "node masses must match node count");
  KcgInstance inst;
  inst.hierarchy = &h;
  inst.item_mass = masses.mass;
  inst.item_weight.resize(static_cast<std::size_t>(h.node_count()));
  for (int v = 0; v < h.node_count(); ++v)
    inst.item_weight[static_cast<std::size_t>(v)] = h.node_weight(v);
  inst.conflicts = std::make_shared<ConflictGraph>(build_conflict_graph(h));
  inst.budgets = b;
  return inst;
}

KcgInstance build_kcg_instance(const Hierarchy& h, const FlatDistribution& d, Budgets b) {
  return build_kcg_instance(h, all_node_masses(h, d), b);
}

namespace {

struct Search {
  const Hierarchy& h;
  const KcgInstance& inst;
  KcgOptions opt;

  std::vector<int> order;       // eligible nodes, mass desc then index asc
  std::vector<double> prefix;   // prefix[i] = sum of the first i ordered masses
  std::vector<int> selection;
  std::vector<Interval> selected_ivs;

  std::vector<int> best;
  double best_mass = 0.0;
  std::uint64_t explored = 0;

  // Admissible, conflict-agnostic bound: the j largest still-available
  // masses. Items are sorted, so those are the next j entries of `order`.
  double top_remaining(std::size_t i, int j) const {
    std::size_t hi = std::min(order.size(), i + static_cast<std::size_t>(j));
    return prefix[hi] - prefix[i];
  }

  void dfs(std::size_t start, int used_r, int used_k, double mass) {
    ++explored;
    if (mass > best_mass) {  // strict: first optimum found wins ties
      best = selection;
      best_mass = mass;
    }
    if (used_r == inst.budgets.r || used_k == inst.budgets.k) return;
    for (std::size_t i = start; i < order.size(); ++i) {
      if (opt.use_bound && mass + top_remaining(i, inst.budgets.r - used_r) <= best_mass) return;
      int v = order[i];
      int w = inst.item_weight[static_cast<std::size_t>(v)];
      if (used_k + w > inst.budgets.k) continue;
      Interval iv = h.leaf_interval(v);
      bool clash = false;
      for (Interval s : selected_ivs)
        if (!disjoint(s, iv)) {
          clash = true;
          break;
        }
      if (clash) continue;
      selection.push_back(v);
      selected_ivs.push_back(iv);
      dfs(i + 1, used_r + 1, used_k + w, mass + inst.item_mass[static_cast<std::size_t>(v)]);
      selection.pop_back();
      selected_ivs.pop_back();
    }
  }
};

}  // namespace

KcgSolution solve_kcg_detailed(const KcgInstance& inst, KcgOptions opt) {
  if (inst.hierarchy == nullptr) raise(Errc::InvalidArgument, "instance missing hierarchy");
  const Hierarchy& h = *inst.hierarchy;
  if (static_cast<int>(inst.item_mass.size()) != h.node_count() ||
      static_cast<int>(inst.item_weight.size()) != h.node_count())
    raise(Errc::DimensionMismatch, "instance vectors must match node count");
  if (inst.budgets.r < 1 || inst.budgets.k < 1)
    raise(Errc::InfeasibleBudget, "budgets must satisfy r >= 1 and k >= 1");

  const auto start = std::chrono::steady_clock::now();

  Search s{h, inst, opt, {}, {}, {}, {}, {}, 0.0, 0};
  for (int v = 0; v < h.node_count(); ++v)
    if (inst.item_weight[static_cast<std::size_t>(v)] <= inst.budgets.k) s.order.push_back(v);
  std::sort(s.order.begin(), s.order.end(), [&](int a, int b) {
    double ma = inst.item_mass[static_cast<std::size_t>(a)];
    double mb = inst.item_mass[static_cast<std::size_t>(b)];
    if (ma != mb) return ma > mb;
    return a < b;
  });
  s.prefix.resize(s.order.size() + 1, 0.0);
  for (std::size_t i = 0; i < s.order.size(); ++i)
    s.prefix[i + 1] = s.prefix[i] + inst.item_mass[static_cast<std::size_t>(s.order[i])];

  s.dfs(0, 0, 0, 0.0);

  KcgSolution sol;
  sol.selected_nodes = std::move(s.best);
  std::sort(sol.selected_nodes.begin(), sol.selected_nodes.end(),
            [&](int a, int b) { return h.leaf_interval(a).lo < h.leaf_interval(b).lo; });
  for (int v : sol.selected_nodes) {
    Interval iv = h.leaf_interval(v);
    for (int c = iv.lo; c < iv.hi; ++c) sol.prediction.set.members.push_back(c);
  }
  sol.prediction.mass = s.best_mass;
  IlpDims dims = ilp_dimensions(h);
  sol.prediction.n = dims.rows * dims.cols;
  sol.prediction.search_nodes = s.explored;
  sol.prediction.time_us = std::chrono::duration_cast<std::chrono::microseconds>(
                               std::chrono::steady_clock::now() - start)
                               .count();
  return sol;
}

}  // namespace hsvp
