#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "hsvp/prob.hpp"

namespace hsvp {

/// One instance of the probability table: instance id, true class (-1 when
/// unknown) and the flat conditional distribution.
struct ProbRow {
  std::int64_t instance_id = 0;
  int y_true = -1;
  FlatDistribution dist;
};

/// Hierarchy file: one `node_id<TAB>parent_id<TAB>name` line per node, root
/// parent 0, `#` comments ignored. Children are ordered by line order, which
/// fixes the depth-first class indexing.
Hierarchy load_hierarchy(const std::filesystem::path& path);
void save_hierarchy(const Hierarchy& h, const std::filesystem::path& path);

/// CSV with header `instance_id,y_true,p_0,...,p_{K-1}`. Rows whose
/// probabilities sum within 1e-9 of 1 pass as-is; drift up to 1e-4 is
/// renormalized with one warning per file on stderr; anything worse is a
/// parse error, as are malformed rows (messages carry file and line).
std::vector<ProbRow> load_probs_csv(const std::filesystem::path& path, int class_count);
void save_probs_csv(const std::vector<ProbRow>& rows, const std::filesystem::path& path);

/// Conditionals file: one `node_id<TAB>child_id<TAB>prob` line per edge.
/// Every internal node needs its full child row; the same drift policy as
/// the CSV applies per node.
HierarchicalDistribution load_conditionals(const std::filesystem::path& path, const Hierarchy& h);
void save_conditionals(const Hierarchy& h, const HierarchicalDistribution& d,
                       const std::filesystem::path& path);

/// Shortest round-trip decimal formatting used by all writers.
std::string format_double(double x);

}  // namespace hsvp
