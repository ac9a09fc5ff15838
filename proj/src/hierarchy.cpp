#include "hsvp/hierarchy.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <unordered_map>

namespace hsvp {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::MultipleRoots: return "MultipleRoots";
    case Errc::UnaryInternalNode: return "UnaryInternalNode";
    case Errc::UnknownParent: return "UnknownParent";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::EmptySet: return "EmptySet";
    case Errc::TooLarge: return "TooLarge";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::EmptyBatch: return "EmptyBatch";
    case Errc::InfeasibleBudget: return "InfeasibleBudget";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
  }
  return "Error";
}

ClassSet ClassSet::of(std::vector<int> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return ClassSet{std::move(xs)};
}

bool ClassSet::contains(int c) const {
  return std::binary_search(members.begin(), members.end(), c);
}

ClassSet Hierarchy::leaf_set(int v) const {
  Interval iv = leaf_interval(v);
  ClassSet out;
  out.members.resize(static_cast<std::size_t>(iv.width()));
  std::iota(out.members.begin(), out.members.end(), iv.lo);
  return out;
}

Hierarchy Hierarchy::from_edges(const std::vector<std::pair<std::int64_t, std::int64_t>>& edges,
                                std::vector<std::string> names) {
  const int m = static_cast<int>(edges.size());
  if (m < 1) raise(Errc::InvalidArgument, "hierarchy needs at least one node");
  if (!names.empty() && static_cast<int>(names.size()) != m)
    raise(Errc::InvalidArgument, "names must match node count");

  std::unordered_map<std::int64_t, int> index_of;
  index_of.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    auto [id, parent_id] = edges[static_cast<std::size_t>(i)];
    if (id <= 0) raise(Errc::InvalidArgument, "node id must be positive: " + std::to_string(id));
    if (!index_of.emplace(id, i).second)
      raise(Errc::InvalidArgument, "duplicate node id " + std::to_string(id));
    (void)parent_id;
  }

  Hierarchy h;
  h.parent_.assign(static_cast<std::size_t>(m), -1);
  h.children_.assign(static_cast<std::size_t>(m), {});
  h.ids_.resize(static_cast<std::size_t>(m));
  h.names_ = names.empty() ? std::vector<std::string>(static_cast<std::size_t>(m))
                           : std::move(names);

  int root = -1;
  for (int i = 0; i < m; ++i) {
    auto [id, parent_id] = edges[static_cast<std::size_t>(i)];
    h.ids_[static_cast<std::size_t>(i)] = id;
    if (h.names_[static_cast<std::size_t>(i)].empty())
      h.names_[static_cast<std::size_t>(i)] = "v" + std::to_string(id);
    if (parent_id == 0) {
      if (root != -1) raise(Errc::MultipleRoots, "nodes " + std::to_string(h.ids_[root]) + " and " +
                                                     std::to_string(id) + " both claim the root");
      root = i;
      continue;
    }
    auto it = index_of.find(parent_id);
    if (it == index_of.end())
      raise(Errc::UnknownParent,
            "node " + std::to_string(id) + " references parent " + std::to_string(parent_id));
    h.parent_[static_cast<std::size_t>(i)] = it->second;
    h.children_[static_cast<std::size_t>(it->second)].push_back(i);
  }
  if (root == -1) raise(Errc::CycleDetected, "no root node; parent links form a cycle");
  h.root_ = root;

  // Depth-first pass: validates reachability (a tree reaches all M nodes) and
  // assigns class indices in leaf visit order.
  h.interval_.assign(static_cast<std::size_t>(m), Interval{});
  h.depth_.assign(static_cast<std::size_t>(m), 0);
  h.child_pos_.assign(static_cast<std::size_t>(m), 0);
  int next_class = 0;
  int visited = 0;
  // (node, next child to visit) pairs
  std::vector<std::pair<int, std::size_t>> stack;
  stack.emplace_back(root, 0);
  ++visited;
  while (!stack.empty()) {
    auto& [v, ci] = stack.back();
    const auto& ch = h.children_[static_cast<std::size_t>(v)];
    if (ch.empty()) {
      h.interval_[static_cast<std::size_t>(v)] = Interval{next_class, next_class + 1};
      ++next_class;
      stack.pop_back();
      continue;
    }
    if (ci < ch.size()) {
      int c = ch[ci];
      h.child_pos_[static_cast<std::size_t>(c)] = static_cast<int>(ci);
      h.depth_[static_cast<std::size_t>(c)] = h.depth_[static_cast<std::size_t>(v)] + 1;
      ++ci;
      stack.emplace_back(c, 0);
      ++visited;
      continue;
    }
    h.interval_[static_cast<std::size_t>(v)] =
        Interval{h.interval_[static_cast<std::size_t>(ch.front())].lo,
                 h.interval_[static_cast<std::size_t>(ch.back())].hi};
    stack.pop_back();
  }
  if (visited != m)
    raise(Errc::CycleDetected,
          std::to_string(m - visited) + " node(s) unreachable from the root (cycle)");

  for (int v = 0; v < m; ++v) {
    if (h.children_[static_cast<std::size_t>(v)].size() == 1)
      raise(Errc::UnaryInternalNode,
            "node " + std::to_string(h.ids_[static_cast<std::size_t>(v)]) + " has a single child");
  }

  h.class_count_ = next_class;
  h.class_to_leaf_.assign(static_cast<std::size_t>(next_class), -1);
  for (int v = 0; v < m; ++v)
    if (h.children_[static_cast<std::size_t>(v)].empty())
      h.class_to_leaf_[static_cast<std::size_t>(h.interval_[static_cast<std::size_t>(v)].lo)] = v;
  return h;
}

namespace {

// Prefix counts of y's indicator over class indices; pre[c] = |y ∩ [0, c)|.
std::vector<int> member_prefix(const Hierarchy& h, const ClassSet& y) {
  const int k = h.class_count();
  std::vector<int> pre(static_cast<std::size_t>(k) + 1, 0);
  for (int c : y.members) {
    if (c < 0 || c >= k)
      raise(Errc::InvalidArgument, "class index " + std::to_string(c) + " out of range");
    pre[static_cast<std::size_t>(c) + 1] = 1;
  }
  for (int c = 0; c < k; ++c) pre[static_cast<std::size_t>(c) + 1] += pre[static_cast<std::size_t>(c)];
  return pre;
}

inline int count_in(const std::vector<int>& pre, Interval iv) {
  return pre[static_cast<std::size_t>(iv.hi)] - pre[static_cast<std::size_t>(iv.lo)];
}

}  // namespace

Cover min_cover(const Hierarchy& h, const ClassSet& y) {
  if (y.empty()) raise(Errc::EmptySet, "representation complexity undefined for the empty set");
  const std::vector<int> pre = member_prefix(h, y);

  // Maximal nodes whose leaf interval lies inside y; descend only where the
  // interval and y partially overlap.
  Cover cover;
  std::vector<int> stack{h.root()};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    Interval iv = h.leaf_interval(v);
    int inside = count_in(pre, iv);
    if (inside == 0) continue;
    if (inside == iv.width()) {
      cover.nodes.push_back(v);
      continue;
    }
    for (int c : h.children_of(v)) stack.push_back(c);
  }
  std::sort(cover.nodes.begin(), cover.nodes.end(),
            [&](int a, int b) { return h.leaf_interval(a).lo < h.leaf_interval(b).lo; });
  cover.complexity = static_cast<int>(cover.nodes.size());
  return cover;
}

OracleCover min_cover_oracle(const Hierarchy& h, const ClassSet& y) {
  if (h.node_count() > 24)
    raise(Errc::TooLarge, "exhaustive cover search limited to 24 nodes, got " +
                              std::to_string(h.node_count()));
  if (y.empty()) raise(Errc::EmptySet, "representation complexity undefined for the empty set");
  const std::vector<int> pre = member_prefix(h, y);

  // Enumerates every disjoint cover exactly once. Covering the members in
  // ascending class order, the node covering the smallest uncovered member c
  // must start at c and lie fully inside y; candidates are found by walking
  // the ancestor chain of c's leaf.
  OracleCover result;
  std::vector<int> chosen;
  std::vector<int> best;
  const auto& members = y.members;
  auto search = [&](auto&& self, std::size_t pos) -> void {
    if (pos == members.size()) {
      ++result.cover_count;
      if (best.empty() || chosen.size() < best.size()) best = chosen;
      return;
    }
    int c = members[pos];
    for (int v = h.leaf_of_class(c); v != -1; v = h.parent_of(v)) {
      Interval iv = h.leaf_interval(v);
      if (iv.lo != c) break;
      if (count_in(pre, iv) != iv.width()) break;
      chosen.push_back(v);
      // members are sorted, so the next uncovered one is the first >= iv.hi
      auto next = std::lower_bound(members.begin() + static_cast<std::ptrdiff_t>(pos),
                                   members.end(), iv.hi);
      self(self, static_cast<std::size_t>(next - members.begin()));
      chosen.pop_back();
    }
  };
  search(search, 0);

  std::sort(best.begin(), best.end(),
            [&](int a, int b) { return h.leaf_interval(a).lo < h.leaf_interval(b).lo; });
  result.cover.nodes = std::move(best);
  result.cover.complexity = static_cast<int>(result.cover.nodes.size());
  return result;
}

std::vector<ClassSet> enumerate_complexity_class(const Hierarchy& h, int r) {
  const int k = h.class_count();
  if (k > 12)
    raise(Errc::TooLarge, "complexity-class enumeration limited to 12 classes, got " +
                              std::to_string(k));
  if (r < 1) raise(Errc::InvalidArgument, "complexity class index must be >= 1");

  std::vector<ClassSet> out;
  const std::uint32_t total = (1u << k);
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    ClassSet y;
    for (int c = 0; c < k; ++c)
      if (mask & (1u << c)) y.members.push_back(c);
    if (min_cover(h, y).complexity == r) out.push_back(std::move(y));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t enum_guard() {
  static const std::uint64_t guard = [] {
    if (const char* env = std::getenv("HSVP_ENUM_GUARD")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
    }
    return static_cast<std::uint64_t>(10'000'000);
  }();
  return guard;
}

std::vector<ClassSet> enumerate_feasible(const Hierarchy& h, Budgets b, std::uint64_t guard) {
  if (b.r < 1 || b.k < 1) raise(Errc::InfeasibleBudget, "budgets must satisfy r >= 1 and k >= 1");

  // Candidate nodes: anything light enough to fit the size budget alone.
  std::vector<int> cand;
  for (int v = 0; v < h.node_count(); ++v)
    if (h.node_weight(v) <= b.k) cand.push_back(v);

  const std::uint64_t combo_limit = guard * 4;
  std::uint64_t combos = 0;
  std::vector<std::vector<int>> sets;
  std::vector<Interval> chosen;

  auto emit = [&]() {
    std::vector<Interval> ivs = chosen;
    std::sort(ivs.begin(), ivs.end(), [](Interval a, Interval b2) { return a.lo < b2.lo; });
    std::vector<int> members;
    for (Interval iv : ivs)
      for (int c = iv.lo; c < iv.hi; ++c) members.push_back(c);
    sets.push_back(std::move(members));
  };

  auto rec = [&](auto&& self, std::size_t start, int used_r, int used_k) -> void {
    for (std::size_t i = start; i < cand.size(); ++i) {
      Interval iv = h.leaf_interval(cand[i]);
      if (used_k + iv.width() > b.k) continue;
      bool clash = false;
      for (Interval cv : chosen)
        if (!disjoint(cv, iv)) {
          clash = true;
          break;
        }
      if (clash) continue;
      if (++combos > combo_limit)
        raise(Errc::TooLarge, "feasible-set enumeration exceeds the size guard (" +
                                  std::to_string(guard) + ")");
      chosen.push_back(iv);
      emit();
      if (used_r + 1 < b.r) self(self, i + 1, used_r + 1, used_k + iv.width());
      chosen.pop_back();
    }
  };
  rec(rec, 0, 0, 0);

  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  if (sets.size() > guard)
    raise(Errc::TooLarge, "feasible set has " + std::to_string(sets.size()) +
                              " elements, guard is " + std::to_string(guard));

  std::vector<ClassSet> out;
  out.reserve(sets.size());
  for (auto& s : sets) out.push_back(ClassSet{std::move(s)});
  return out;
}

}  // namespace hsvp
