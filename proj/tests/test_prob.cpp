#include <cmath>

#include "doctest.h"
#include "hsvp/prob.hpp"
#include "test_util.hpp"

using namespace hsvp;
using test::cs;
using test::example_dist;
using test::four_class_tree;

TEST_CASE("set_mass sums member probabilities") {
  FlatDistribution d = example_dist();
  CHECK(set_mass(d, cs({0, 2})) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(set_mass(d, cs({0, 1, 2, 3})) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(set_mass(d, ClassSet{}) == 0.0);
}

TEST_CASE("flat distribution validation") {
  CHECK_THROWS_AS(FlatDistribution::validated({0.5, 0.6}), Error);
  CHECK_THROWS_AS(FlatDistribution::validated({-0.1, 1.1}), Error);
  CHECK_NOTHROW(FlatDistribution::validated({0.25, 0.25, 0.25, 0.25}));
}

TEST_CASE("node masses over the four-class tree") {
  Hierarchy h = four_class_tree();
  NodeMasses m = all_node_masses(h, example_dist());
  // nodes declared in id order: v1..v7
  CHECK(m.mass[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.mass[1] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(m.mass[2] == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(m.mass[3] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.mass[4] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(m.mass[5] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(m.mass[6] == doctest::Approx(0.1).epsilon(1e-12));

  NodeMasses point = all_node_masses(h, FlatDistribution::validated({1, 0, 0, 0}));
  CHECK(point.mass[1] == 1.0);
  CHECK(point.mass[3] == 1.0);
  CHECK(point.mass[2] == 0.0);
  CHECK(point.mass[5] == 0.0);
}

TEST_CASE("flat_to_hier conditionals and zero-mass fallback") {
  Hierarchy h = four_class_tree();
  HierarchicalDistribution hd = flat_to_hier(h, example_dist());
  CHECK(hd.child_cond[0][0] == doctest::Approx(0.6).epsilon(1e-12));   // P(v2|v1)
  CHECK(hd.child_cond[1][0] == doctest::Approx(5.0 / 6.0).epsilon(1e-12));  // P(v4|v2)
  CHECK(hd.child_cond[2][1] == doctest::Approx(0.25).epsilon(1e-12));  // P(v7|v3)

  HierarchicalDistribution uniform = flat_to_hier(h, FlatDistribution::validated({0.25, 0.25, 0.25, 0.25}));
  for (int v = 0; v < h.node_count(); ++v)
    for (double c : uniform.child_cond[static_cast<std::size_t>(v)])
      CHECK(c == doctest::Approx(0.5).epsilon(1e-12));

  HierarchicalDistribution point = flat_to_hier(h, FlatDistribution::validated({1, 0, 0, 0}));
  CHECK(point.child_cond[0][0] == 1.0);
  CHECK(point.child_cond[2][0] == 0.5);  // zero-mass parent: uniform children
}

TEST_CASE("node_mass_chain multiplies conditionals along the path") {
  Hierarchy h = four_class_tree();
  HierarchicalDistribution hd = flat_to_hier(h, example_dist());
  CHECK(node_mass_chain(h, hd, h.root()) == 1.0);
  CHECK(node_mass_chain(h, hd, 3) == doctest::Approx(0.5).epsilon(1e-12));  // v4
  CHECK(node_mass_chain(h, hd, 5) == doctest::Approx(0.3).epsilon(1e-12));  // v6
  CHECK_THROWS_AS(node_mass_chain(h, hd, 99), Error);
}

TEST_CASE("hier_to_flat inverts the factorization") {
  Hierarchy h = four_class_tree();
  FlatDistribution d = example_dist();
  FlatDistribution back = hier_to_flat(h, flat_to_hier(h, d));
  for (int c = 0; c < 4; ++c)
    CHECK(back.probs[static_cast<std::size_t>(c)] ==
          doctest::Approx(d.probs[static_cast<std::size_t>(c)]).epsilon(1e-12));

  // uniform conditionals on a binary tree give the uniform distribution
  std::vector<std::vector<double>> cc = {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}, {}, {}, {}, {}};
  FlatDistribution flat = hier_to_flat(h, HierarchicalDistribution::validated(h, cc));
  for (double p : flat.probs) CHECK(p == doctest::Approx(0.25).epsilon(1e-12));

  std::vector<std::vector<double>> skew = {{1.0, 0.0}, {0.5, 0.5}, {0.5, 0.5}, {}, {}, {}, {}};
  FlatDistribution half = hier_to_flat(h, HierarchicalDistribution::validated(h, skew));
  CHECK(half.probs[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(half.probs[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(half.probs[2] == 0.0);
  CHECK(half.probs[3] == 0.0);
}

TEST_CASE("round trip, chain consistency and conservation on random instances") {
  Rng rng(4242);
  for (int trial = 0; trial < 80; ++trial) {
    Hierarchy h = test::random_tree(rng, 3, 12);
    FlatDistribution d = random_flat(h.class_count(), 1.0, rng);
    HierarchicalDistribution hd = flat_to_hier(h, d);
    NodeMasses masses = all_node_masses(h, d);

    FlatDistribution back = hier_to_flat(h, hd);
    double sum = 0.0;
    for (int c = 0; c < h.class_count(); ++c) {
      REQUIRE(std::abs(back.probs[static_cast<std::size_t>(c)] -
                       d.probs[static_cast<std::size_t>(c)]) <= kIdentityTolerance);
      sum += back.probs[static_cast<std::size_t>(c)];
    }
    REQUIRE(std::abs(sum - 1.0) <= kInputTolerance);

    for (int v = 0; v < h.node_count(); ++v) {
      REQUIRE(std::abs(node_mass_chain(h, hd, v) - masses.mass[static_cast<std::size_t>(v)]) <=
              kIdentityTolerance);
      if (h.is_leaf(v)) continue;
      double child_sum = 0.0;
      for (int c : h.children_of(v)) child_sum += masses.mass[static_cast<std::size_t>(c)];
      REQUIRE(std::abs(child_sum - masses.mass[static_cast<std::size_t>(v)]) <= kInputTolerance);
    }
  }
}
