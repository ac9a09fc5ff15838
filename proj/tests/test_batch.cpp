#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "hsvp/batch.hpp"
#include "test_util.hpp"

using namespace hsvp;

namespace {

std::vector<FlatDistribution> make_rows(int count, int classes, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<FlatDistribution> rows;
  for (int i = 0; i < count; ++i) rows.push_back(random_flat(classes, 1.0, rng));
  return rows;
}

void check_same(const std::vector<Prediction>& a, const std::vector<Prediction>& b) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].set == b[i].set);
    REQUIRE(a[i].mass == b[i].mass);  // identical per-instance code path: bitwise equal
    REQUIRE(a[i].n == b[i].n);
  }
}

}  // namespace

TEST_CASE("solver name parsing") {
  CHECK(parse_solver("rts") == SolverKind::Rts);
  CHECK(parse_solver("mvm") == SolverKind::Mvm);
  CHECK(parse_solver("kcg") == SolverKind::Kcg);
  CHECK(parse_solver("oracle") == SolverKind::Oracle);
  CHECK_FALSE(parse_solver("topk").has_value());
  CHECK(solver_name(SolverKind::Kcg) == "kcg");
}

TEST_CASE("parallel batch matches the serial reference for every solver") {
  Hierarchy h = balanced_binary_hierarchy(16);
  std::vector<FlatDistribution> rows = make_rows(40, 16, 123);
  Budgets b{2, 3};
  for (SolverKind kind :
       {SolverKind::Mvm, SolverKind::Kcg, SolverKind::Rts, SolverKind::Oracle}) {
    BatchOptions par;
    par.workers = 4;
    std::vector<Prediction> serial = run_batch_serial(kind, h, rows, b);
    std::vector<Prediction> parallel = run_batch_parallel(kind, h, rows, b, par);
    check_same(serial, parallel);
  }
}

TEST_CASE("batch results are in input order and budget-consistent") {
  Rng rng(888);
  Hierarchy h = test::random_tree(rng, 5, 10);
  std::vector<FlatDistribution> rows = make_rows(25, h.class_count(), 31337);
  Budgets b{2, 4};
  std::vector<Prediction> preds = run_batch(SolverKind::Rts, h, rows, b, {.workers = 3});
  REQUIRE(preds.size() == rows.size());
  for (std::size_t i = 0; i < preds.size(); ++i) {
    REQUIRE(std::abs(set_mass(rows[i], preds[i].set) - preds[i].mass) <= 1e-9);
    REQUIRE(static_cast<int>(preds[i].set.size()) <= b.k);
    REQUIRE(min_cover(h, preds[i].set).complexity <= b.r);
  }
}

TEST_CASE("cross-solver agreement through the batch runner") {
  Hierarchy h = balanced_binary_hierarchy(12);
  std::vector<FlatDistribution> rows = make_rows(30, 12, 777);
  for (Budgets b : {Budgets{1, 2}, Budgets{2, 3}, Budgets{3, 5}}) {
    std::vector<Prediction> mvm = run_batch(SolverKind::Mvm, h, rows, b);
    std::vector<Prediction> kcg = run_batch(SolverKind::Kcg, h, rows, b);
    std::vector<Prediction> rts = run_batch(SolverKind::Rts, h, rows, b);
    std::vector<Prediction> oracle = run_batch(SolverKind::Oracle, h, rows, b);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      REQUIRE(std::abs(mvm[i].mass - oracle[i].mass) <= 1e-9);
      REQUIRE(std::abs(kcg[i].mass - oracle[i].mass) <= 1e-9);
      REQUIRE(std::abs(rts[i].mass - oracle[i].mass) <= 1e-9);
    }
  }
}

TEST_CASE("at r = k every solver's recall equals plain top-k recall") {
  Rng rng(2025);
  Hierarchy h = balanced_binary_hierarchy(10);
  std::vector<FlatDistribution> rows = make_rows(50, 10, 404);
  std::vector<int> truths;
  for (auto& row : rows) truths.push_back(sample_class(row, rng));

  for (int k : {1, 2, 3}) {
    Budgets b{k, k};
    // reference: hit iff the truth is among the k highest-probability classes
    double hits = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::vector<int> order(10);
      for (int c = 0; c < 10; ++c) order[static_cast<std::size_t>(c)] = c;
      std::stable_sort(order.begin(), order.end(), [&](int a, int c) {
        return rows[i].probs[static_cast<std::size_t>(a)] >
               rows[i].probs[static_cast<std::size_t>(c)];
      });
      for (int j = 0; j < k; ++j)
        if (order[static_cast<std::size_t>(j)] == truths[i]) hits += 1;
    }
    double topk_recall = hits / static_cast<double>(rows.size());
    for (SolverKind kind : {SolverKind::Mvm, SolverKind::Kcg, SolverKind::Rts}) {
      MetricsRow row = evaluate(std::string(solver_name(kind)), b,
                                run_batch(kind, h, rows, b), truths);
      REQUIRE(std::abs(row.recall - topk_recall) <= 1e-9);
    }
  }
}

TEST_CASE("mvm batch propagates the enumeration guard") {
  Hierarchy h = balanced_binary_hierarchy(1000);
  std::vector<FlatDistribution> rows = make_rows(2, 1000, 1);
  try {
    run_batch(SolverKind::Mvm, h, rows, {3, 5});
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TooLarge);
  }
}
