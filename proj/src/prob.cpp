#include "hsvp/prob.hpp"

#include <cmath>
#include <cstdlib>

namespace hsvp {

FlatDistribution FlatDistribution::validated(std::vector<double> p) {
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || x > 1.0 + kInputTolerance)
      raise(Errc::InvalidArgument, "probability entry out of [0, 1]: " + std::to_string(x));
    sum += x;
  }
  if (std::abs(sum - 1.0) > kInputTolerance)
    raise(Errc::InvalidArgument, "probabilities sum to " + std::to_string(sum) + ", expected 1");
  return FlatDistribution{std::move(p)};
}

HierarchicalDistribution HierarchicalDistribution::validated(
    const Hierarchy& h, std::vector<std::vector<double>> cc) {
  if (static_cast<int>(cc.size()) != h.node_count())
    raise(Errc::DimensionMismatch, "conditional rows must match node count");
  for (int v = 0; v < h.node_count(); ++v) {
    const auto& row = cc[static_cast<std::size_t>(v)];
    const std::size_t want = h.children_of(v).size();
    if (row.size() != want)
      raise(Errc::DimensionMismatch, "node " + std::to_string(h.node_id(v)) + " expects " +
                                         std::to_string(want) + " conditionals, got " +
                                         std::to_string(row.size()));
    if (want == 0) continue;
    double sum = 0.0;
    for (double x : row) {
      if (!(x >= 0.0) || x > 1.0 + kInputTolerance)
        raise(Errc::InvalidArgument, "conditional out of [0, 1]: " + std::to_string(x));
      sum += x;
    }
    if (std::abs(sum - 1.0) > kInputTolerance)
      raise(Errc::InvalidArgument, "conditionals of node " + std::to_string(h.node_id(v)) +
                                       " sum to " + std::to_string(sum));
  }
  return HierarchicalDistribution{std::move(cc)};
}

double set_mass(const FlatDistribution& d, const ClassSet& y) {
  double sum = 0.0;
  for (int c : y.members) {
    if (c < 0 || c >= d.class_count())
      raise(Errc::InvalidArgument, "class index " + std::to_string(c) + " out of range");
    sum += d.probs[static_cast<std::size_t>(c)];
  }
  return sum;
}

double node_mass_chain(const Hierarchy& h, const HierarchicalDistribution& d, int v) {
  if (v < 0 || v >= h.node_count())
    raise(Errc::UnknownNode, "node index " + std::to_string(v) + " out of range");
  // collect the path, then multiply top-down
  std::vector<int> path;
  for (int u = v; u != h.root(); u = h.parent_of(u)) path.push_back(u);
  double mass = 1.0;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    int parent = h.parent_of(*it);
    mass *= d.child_cond[static_cast<std::size_t>(parent)][static_cast<std::size_t>(h.child_pos(*it))];
  }
  return mass;
}

namespace {

std::vector<double> leaf_prefix(const Hierarchy& h, const FlatDistribution& d) {
  if (d.class_count() != h.class_count())
    raise(Errc::DimensionMismatch, "distribution has " + std::to_string(d.class_count()) +
                                       " classes, hierarchy has " +
                                       std::to_string(h.class_count()));
  std::vector<double> pre(static_cast<std::size_t>(h.class_count()) + 1, 0.0);
  for (int c = 0; c < h.class_count(); ++c)
    pre[static_cast<std::size_t>(c) + 1] =
        pre[static_cast<std::size_t>(c)] + d.probs[static_cast<std::size_t>(c)];
  return pre;
}

inline double interval_mass(const std::vector<double>& pre, Interval iv) {
  return pre[static_cast<std::size_t>(iv.hi)] - pre[static_cast<std::size_t>(iv.lo)];
}

}  // namespace

NodeMasses all_node_masses(const Hierarchy& h, const FlatDistribution& d) {
  const std::vector<double> pre = leaf_prefix(h, d);
  NodeMasses out;
  out.mass.resize(static_cast<std::size_t>(h.node_count()));
  for (int v = 0; v < h.node_count(); ++v)
    out.mass[static_cast<std::size_t>(v)] = interval_mass(pre, h.leaf_interval(v));
  return out;
}

HierarchicalDistribution flat_to_hier(const Hierarchy& h, const FlatDistribution& d) {
  const std::vector<double> pre = leaf_prefix(h, d);
  std::vector<std::vector<double>> cc(static_cast<std::size_t>(h.node_count()));
  for (int v = 0; v < h.node_count(); ++v) {
    const auto& ch = h.children_of(v);
    if (ch.empty()) continue;
    auto& row = cc[static_cast<std::size_t>(v)];
    row.resize(ch.size());
    double parent_mass = interval_mass(pre, h.leaf_interval(v));
    if (parent_mass == 0.0) {
      double uniform = 1.0 / static_cast<double>(ch.size());
      for (auto& x : row) x = uniform;
      continue;
    }
    for (std::size_t i = 0; i < ch.size(); ++i)
      row[i] = interval_mass(pre, h.leaf_interval(ch[i])) / parent_mass;
  }
  return HierarchicalDistribution{std::move(cc)};
}

FlatDistribution hier_to_flat(const Hierarchy& h, const HierarchicalDistribution& d) {
  std::vector<double> probs(static_cast<std::size_t>(h.class_count()), 0.0);
  std::vector<double> mass(static_cast<std::size_t>(h.node_count()), 0.0);
  std::vector<int> stack{h.root()};
  mass[static_cast<std::size_t>(h.root())] = 1.0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    const auto& ch = h.children_of(v);
    if (ch.empty()) {
      probs[static_cast<std::size_t>(h.leaf_interval(v).lo)] = mass[static_cast<std::size_t>(v)];
      continue;
    }
    for (std::size_t i = 0; i < ch.size(); ++i) {
      mass[static_cast<std::size_t>(ch[i])] =
          mass[static_cast<std::size_t>(v)] * d.child_cond[static_cast<std::size_t>(v)][i];
      stack.push_back(ch[i]);
    }
  }
  return FlatDistribution{std::move(probs)};
}

}  // namespace hsvp
