#include <algorithm>
#include <set>

#include "doctest.h"
#include "hsvp/solver_kcg.hpp"
#include "hsvp/solver_mvm.hpp"
#include "test_util.hpp"

using namespace hsvp;
using test::cs;
using test::example_dist;
using test::four_class_tree;

namespace {

// Dumb reference: enumerate every conflict-free node selection within both
// budgets in node-index order. Knows nothing about sorting or pruning.
double best_selection_mass(const KcgInstance& inst) {
  const Hierarchy& h = *inst.hierarchy;
  double best = 0.0;
  std::vector<Interval> chosen;
  auto rec = [&](auto&& self, int start, int used_r, int used_k, double mass) -> void {
    best = std::max(best, mass);
    if (used_r == inst.budgets.r) return;
    for (int v = start; v < h.node_count(); ++v) {
      int w = inst.item_weight[static_cast<std::size_t>(v)];
      if (used_k + w > inst.budgets.k) continue;
      Interval iv = h.leaf_interval(v);
      bool clash = false;
      for (Interval s : chosen)
        if (!disjoint(s, iv)) clash = true;
      if (clash) continue;
      chosen.push_back(iv);
      self(self, v + 1, used_r + 1, used_k + w,
           mass + inst.item_mass[static_cast<std::size_t>(v)]);
      chosen.pop_back();
    }
  };
  rec(rec, 0, 0, 0, 0.0);
  return best;
}

}  // namespace

TEST_CASE("conflict graph of the four-class tree") {
  Hierarchy h = four_class_tree();
  ConflictGraph g = build_conflict_graph(h);
  CHECK(g.edges.size() == 10);
  // v1 conflicts with everything below it
  std::set<std::pair<int, int>> edges(g.edges.begin(), g.edges.end());
  for (int v = 1; v < 7; ++v) CHECK(edges.count({0, v}) == 1);
  CHECK(edges.count({1, 3}) == 1);  // v2-v4
  CHECK(edges.count({2, 6}) == 1);  // v3-v7
  CHECK(edges.count({3, 5}) == 0);  // v4 and v6 are disjoint

  ConflictGraph tiny = build_conflict_graph(Hierarchy::from_edges({{1, 0}, {2, 1}, {3, 1}}));
  CHECK(tiny.edges.size() == 2);
}

TEST_CASE("ILP dimensions") {
  CHECK(ilp_dimensions(four_class_tree()).rows == 12);
  CHECK(ilp_dimensions(four_class_tree()).cols == 7);
  IlpDims tiny = ilp_dimensions(Hierarchy::from_edges({{1, 0}, {2, 1}, {3, 1}}));
  CHECK(tiny.rows == 4);
  CHECK(tiny.cols == 3);
  IlpDims b8 = ilp_dimensions(balanced_binary_hierarchy(8));
  CHECK(b8.rows == 36);
  CHECK(b8.cols == 15);
}

TEST_CASE("solve_kcg on the four-class tree") {
  Hierarchy h = four_class_tree();
  FlatDistribution d = example_dist();

  KcgSolution s22 = solve_kcg_detailed(build_kcg_instance(h, d, {2, 2}));
  CHECK(s22.prediction.mass == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(s22.selected_nodes == std::vector<int>{3, 5});  // v4 and v6
  CHECK(s22.prediction.set == cs({0, 2}));
  CHECK(s22.prediction.n == 12 * 7);
  CHECK(s22.prediction.search_nodes > 0);

  KcgSolution s14 = solve_kcg_detailed(build_kcg_instance(h, d, {1, 4}));
  CHECK(s14.prediction.mass == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s14.selected_nodes == std::vector<int>{0});  // the root

  CHECK(solve_kcg(build_kcg_instance(h, d, {2, 3})).mass == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(solve_kcg(build_kcg_instance(h, d, {3, 4})).mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("selection respects budgets and conflicts") {
  Rng rng(1212);
  for (int trial = 0; trial < 60; ++trial) {
    Hierarchy h = test::random_tree(rng, 3, 10);
    FlatDistribution d = random_flat(h.class_count(), 1.0, rng);
    Budgets b{1 + static_cast<int>(rng.below(3)), 1 + static_cast<int>(rng.below(5))};
    KcgSolution sol = solve_kcg_detailed(build_kcg_instance(h, d, b));
    REQUIRE(static_cast<int>(sol.selected_nodes.size()) <= b.r);
    int weight = 0;
    for (std::size_t i = 0; i < sol.selected_nodes.size(); ++i) {
      weight += h.node_weight(sol.selected_nodes[i]);
      for (std::size_t j = i + 1; j < sol.selected_nodes.size(); ++j)
        REQUIRE(disjoint(h.leaf_interval(sol.selected_nodes[i]),
                         h.leaf_interval(sol.selected_nodes[j])));
    }
    REQUIRE(weight <= b.k);
    REQUIRE_FALSE(sol.prediction.set.empty());
  }
}

TEST_CASE("branch-and-bound equals exhaustive selection search") {
  Rng rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    Hierarchy h = test::random_tree(rng, 3, 10);
    REQUIRE(h.node_count() <= 24);
    FlatDistribution d = random_flat(h.class_count(), 1.0, rng);
    Budgets b{1 + static_cast<int>(rng.below(4)), 1 + static_cast<int>(rng.below(5))};
    KcgInstance inst = build_kcg_instance(h, d, b);
    Prediction pred = solve_kcg(inst);
    REQUIRE(pred.mass == doctest::Approx(best_selection_mass(inst)).epsilon(1e-12));
  }
}

TEST_CASE("pruning never cuts a better completion") {
  Rng rng(313);
  for (int trial = 0; trial < 40; ++trial) {
    Hierarchy h = test::random_tree(rng, 3, 9);
    FlatDistribution d = random_flat(h.class_count(), 1.0, rng);
    Budgets b{1 + static_cast<int>(rng.below(3)), 1 + static_cast<int>(rng.below(4))};
    KcgInstance inst = build_kcg_instance(h, d, b);
    Prediction bounded = solve_kcg(inst, {.use_bound = true});
    Prediction full = solve_kcg(inst, {.use_bound = false});
    REQUIRE(bounded.mass == full.mass);
    REQUIRE(bounded.set == full.set);
    REQUIRE(bounded.search_nodes <= full.search_nodes);
  }
}

TEST_CASE("kcg mass matches mvm on shared instances") {
  Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    Hierarchy h = test::random_tree(rng, 3, 9);
    FlatDistribution d = random_flat(h.class_count(), 1.0, rng);
    Budgets b{1 + static_cast<int>(rng.below(3)), 1 + static_cast<int>(rng.below(4))};
    double kcg = solve_kcg(build_kcg_instance(h, d, b)).mass;
    double mvm = solve_mvm(build_matrix(h, b), d).mass;
    REQUIRE(std::abs(kcg - mvm) <= 1e-9);
  }
}
