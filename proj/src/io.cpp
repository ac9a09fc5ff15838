#include "hsvp/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

namespace hsvp {

namespace {

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t line,
                             const std::string& msg) {
  raise(Errc::ParseError, path.string() + ":" + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::int64_t parse_i64(const std::string& tok, const std::filesystem::path& path,
                       std::size_t line) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    parse_fail(path, line, "expected an integer, got '" + tok + "'");
  return v;
}

double parse_f64(const std::string& tok, const std::filesystem::path& path, std::size_t line) {
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    parse_fail(path, line, "expected a number, got '" + tok + "'");
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::ParseError, path.string() + ": cannot open for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) raise(Errc::ParseError, path.string() + ": cannot open for writing");
  return out;
}

// Accepts sums within 1e-9 untouched, renormalizes drift up to 1e-4 (the
// caller warns once per file), rejects anything worse.
bool normalize_row(std::vector<double>& probs, const std::filesystem::path& path,
                   std::size_t line) {
  double sum = 0.0;
  for (double x : probs) {
    if (!(x >= 0.0)) parse_fail(path, line, "negative probability " + format_double(x));
    sum += x;
  }
  if (std::abs(sum - 1.0) <= kInputTolerance) return false;
  if (std::abs(sum - 1.0) > 1e-4 || sum <= 0.0)
    parse_fail(path, line, "probabilities sum to " + format_double(sum) + ", expected 1");
  for (double& x : probs) x /= sum;
  return true;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, p);
}

Hierarchy load_hierarchy(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  std::vector<std::string> names;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields = split(line, '\t');
    if (fields.size() < 2 || fields.size() > 3)
      parse_fail(path, lineno, "expected node_id<TAB>parent_id<TAB>name");
    std::int64_t id = parse_i64(fields[0], path, lineno);
    std::int64_t parent = parse_i64(fields[1], path, lineno);
    edges.emplace_back(id, parent);
    names.push_back(fields.size() == 3 ? fields[2] : "");
  }
  if (edges.empty()) raise(Errc::ParseError, path.string() + ": no nodes");
  return Hierarchy::from_edges(edges, std::move(names));
}

void save_hierarchy(const Hierarchy& h, const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  for (int v = 0; v < h.node_count(); ++v) {
    std::int64_t parent = v == h.root() ? 0 : h.node_id(h.parent_of(v));
    out << h.node_id(v) << '\t' << parent << '\t' << h.node_name(v) << '\n';
  }
}

std::vector<ProbRow> load_probs_csv(const std::filesystem::path& path, int class_count) {
  std::ifstream in = open_input(path);
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) raise(Errc::ParseError, path.string() + ": empty file");
  ++lineno;
  std::vector<std::string> header = split(line, ',');
  if (header.size() != static_cast<std::size_t>(class_count) + 2 || header[0] != "instance_id" ||
      header[1] != "y_true")
    parse_fail(path, lineno,
               "expected header instance_id,y_true,p_0,...,p_" + std::to_string(class_count - 1));

  std::vector<ProbRow> rows;
  bool warned = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields = split(line, ',');
    if (fields.size() != static_cast<std::size_t>(class_count) + 2)
      parse_fail(path, lineno, "expected " + std::to_string(class_count + 2) + " columns, got " +
                                   std::to_string(fields.size()));
    ProbRow row;
    row.instance_id = parse_i64(fields[0], path, lineno);
    std::int64_t y = parse_i64(fields[1], path, lineno);
    if (y < -1 || y >= class_count)
      parse_fail(path, lineno, "y_true " + std::to_string(y) + " out of range");
    row.y_true = static_cast<int>(y);
    std::vector<double> probs(static_cast<std::size_t>(class_count));
    for (int c = 0; c < class_count; ++c)
      probs[static_cast<std::size_t>(c)] = parse_f64(fields[static_cast<std::size_t>(c) + 2],
                                                     path, lineno);
    if (normalize_row(probs, path, lineno) && !warned) {
      std::cerr << path.string() << ": renormalizing rows whose probabilities drift from 1\n";
      warned = true;
    }
    row.dist = FlatDistribution::validated(std::move(probs));
    rows.push_back(std::move(row));
  }
  return rows;
}

void save_probs_csv(const std::vector<ProbRow>& rows, const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  if (rows.empty()) raise(Errc::EmptyBatch, "no rows to write");
  const int k = rows.front().dist.class_count();
  out << "instance_id,y_true";
  for (int c = 0; c < k; ++c) out << ",p_" << c;
  out << '\n';
  for (const ProbRow& row : rows) {
    out << row.instance_id << ',' << row.y_true;
    for (double p : row.dist.probs) out << ',' << format_double(p);
    out << '\n';
  }
}

HierarchicalDistribution load_conditionals(const std::filesystem::path& path,
                                           const Hierarchy& h) {
  std::ifstream in = open_input(path);

  std::vector<std::vector<double>> cc(static_cast<std::size_t>(h.node_count()));
  std::vector<std::vector<bool>> seen(static_cast<std::size_t>(h.node_count()));
  for (int v = 0; v < h.node_count(); ++v) {
    cc[static_cast<std::size_t>(v)].resize(h.children_of(v).size(), 0.0);
    seen[static_cast<std::size_t>(v)].resize(h.children_of(v).size(), false);
  }

  // external id -> node index
  std::vector<std::pair<std::int64_t, int>> ids;
  for (int v = 0; v < h.node_count(); ++v) ids.emplace_back(h.node_id(v), v);
  std::sort(ids.begin(), ids.end());
  auto find_node = [&](std::int64_t id) -> int {
    auto it = std::lower_bound(ids.begin(), ids.end(), std::make_pair(id, 0));
    if (it == ids.end() || it->first != id) return -1;
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields = split(line, '\t');
    if (fields.size() != 3) parse_fail(path, lineno, "expected node_id<TAB>child_id<TAB>prob");
    int parent = find_node(parse_i64(fields[0], path, lineno));
    int child = find_node(parse_i64(fields[1], path, lineno));
    if (parent < 0 || child < 0) parse_fail(path, lineno, "unknown node id");
    if (h.parent_of(child) != parent)
      parse_fail(path, lineno, fields[1] + " is not a child of " + fields[0]);
    double p = parse_f64(fields[2], path, lineno);
    auto pos = static_cast<std::size_t>(h.child_pos(child));
    if (seen[static_cast<std::size_t>(parent)][pos])
      parse_fail(path, lineno, "duplicate conditional for child " + fields[1]);
    seen[static_cast<std::size_t>(parent)][pos] = true;
    cc[static_cast<std::size_t>(parent)][pos] = p;
  }

  bool warned = false;
  for (int v = 0; v < h.node_count(); ++v) {
    auto& row = cc[static_cast<std::size_t>(v)];
    if (row.empty()) continue;
    for (std::size_t i = 0; i < row.size(); ++i)
      if (!seen[static_cast<std::size_t>(v)][i])
        raise(Errc::ParseError, path.string() + ": missing conditional for child " +
                                    std::to_string(h.node_id(h.children_of(v)[i])));
    if (normalize_row(row, path, 0) && !warned) {
      std::cerr << path.string() << ": renormalizing conditionals that drift from 1\n";
      warned = true;
    }
  }
  return HierarchicalDistribution::validated(h, std::move(cc));
}

void save_conditionals(const Hierarchy& h, const HierarchicalDistribution& d,
                       const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  for (int v = 0; v < h.node_count(); ++v) {
    const auto& ch = h.children_of(v);
    for (std::size_t i = 0; i < ch.size(); ++i)
      out << h.node_id(v) << '\t' << h.node_id(ch[i]) << '\t'
          << format_double(d.child_cond[static_cast<std::size_t>(v)][i]) << '\n';
  }
}

}  // namespace hsvp
