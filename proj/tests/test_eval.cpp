#include <cmath>

#include "doctest.h"
#include "hsvp/eval.hpp"
#include "test_util.hpp"

using namespace hsvp;
using test::cs;
using test::example_dist;
using test::four_class_tree;

TEST_CASE("oracle_solve on the four-class tree") {
  Hierarchy h = four_class_tree();
  FlatDistribution d = example_dist();

  Prediction p22 = oracle_solve(h, d, {2, 2});
  CHECK(p22.mass == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(p22.set == cs({0, 2}));
  CHECK(p22.n == 15);

  CHECK(oracle_solve(h, d, {1, 2}).mass == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(oracle_solve(h, d, {3, 4}).mass == doctest::Approx(1.0).epsilon(1e-12));

  // {0,1,2} and {0,2,3} tie in real arithmetic; the fp sums differ by an
  // ulp and {0,2,3} wins, matching every other solver
  CHECK(oracle_solve(h, d, {2, 3}).mass == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(oracle_solve(h, d, {2, 3}).set == cs({0, 2, 3}));

  // exact ties resolve to the lexicographically smallest member list
  FlatDistribution uniform = FlatDistribution::validated({0.25, 0.25, 0.25, 0.25});
  CHECK(oracle_solve(h, uniform, {2, 2}).set == cs({0, 1}));
  CHECK(oracle_solve(h, uniform, {2, 2}).mass == 0.5);
}

TEST_CASE("oracle_solve guards its class budget") {
  Hierarchy h = balanced_binary_hierarchy(20);
  FlatDistribution d = FlatDistribution::validated(std::vector<double>(20, 0.05));
  try {
    oracle_solve(h, d, {2, 2});
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TooLarge);
  }
}

TEST_CASE("evaluate computes recall and averages") {
  Prediction a;
  a.set = cs({0, 1});
  a.time_us = 10;
  a.n = 4;
  Prediction b;
  b.set = cs({2});
  b.time_us = 30;
  b.n = 8;
  MetricsRow row = evaluate("mvm", {2, 2}, {a, b}, {0, 3});
  CHECK(row.recall == doctest::Approx(0.5));
  CHECK(row.avg_set_size == doctest::Approx(1.5));
  CHECK(row.avg_time_us == doctest::Approx(20.0));
  CHECK(row.avg_n == doctest::Approx(6.0));
  CHECK(row.instances == 2);

  // full-space predictions always contain the truth
  Prediction full;
  full.set = cs({0, 1, 2, 3});
  CHECK(evaluate("mvm", {1, 4}, {full, full}, {1, 3}).recall == doctest::Approx(1.0));

  // unknown labels count as misses
  CHECK(evaluate("mvm", {1, 4}, {full}, {-1}).recall == doctest::Approx(0.0));

  CHECK_THROWS_AS(evaluate("mvm", {1, 1}, {a}, {0, 1}), Error);
  try {
    evaluate("mvm", {1, 1}, {}, {});
    FAIL("expected EmptyBatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EmptyBatch);
  }
}

TEST_CASE("recall grows with either budget on continuous distributions") {
  Rng rng(515);
  Hierarchy h = balanced_binary_hierarchy(8);
  std::vector<FlatDistribution> rows;
  std::vector<int> truths;
  for (int i = 0; i < 60; ++i) {
    rows.push_back(random_flat(8, 0.5, rng));
    truths.push_back(sample_class(rows.back(), rng));
  }
  auto recall_at = [&](Budgets b) {
    std::vector<Prediction> preds;
    for (const auto& row : rows) preds.push_back(oracle_solve(h, row, b));
    return evaluate("oracle", b, preds, truths).recall;
  };
  for (int k = 1; k <= 3; ++k)
    CHECK(recall_at({2, k + 1}) >= recall_at({2, k}) - 1e-12);
  for (int r = 1; r <= 2; ++r)
    CHECK(recall_at({r + 1, 3}) >= recall_at({r, 3}) - 1e-12);
}
