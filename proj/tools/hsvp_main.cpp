// hsvp — set-valued prediction over class hierarchies under budgets on set
// size and representation complexity. Subcommands: solve, check, gen, bench.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hsvp/batch.hpp"
#include "hsvp/gen.hpp"
#include "hsvp/io.hpp"
#include "json.hpp"

namespace {

using namespace hsvp;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitResourceGuard = 3;

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    std::string tok = text.substr(start, comma - start);
    if (tok.empty()) raise(Errc::InvalidArgument, "empty entry in list '" + text + "'");
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size() || v < 1)
      raise(Errc::InvalidArgument, "expected a positive integer, got '" + tok + "'");
    out.push_back(v);
    start = comma + 1;
  }
  return out;
}

std::vector<SolverKind> parse_solver_set(const std::string& text) {
  std::vector<SolverKind> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    std::string tok = text.substr(start, comma - start);
    auto kind = parse_solver(tok);
    if (!kind) raise(Errc::InvalidArgument, "unknown solver '" + tok + "'");
    out.push_back(*kind);
    start = comma + 1;
  }
  return out;
}

ordered_json prediction_json(std::int64_t instance_id, SolverKind solver, Budgets b,
                             const Prediction& pred, bool zero_time) {
  ordered_json j;
  j["instance_id"] = instance_id;
  j["solver"] = std::string(solver_name(solver));
  j["r"] = b.r;
  j["k"] = b.k;
  j["set"] = pred.set.members;
  j["mass"] = pred.mass;
  j["n"] = pred.n;
  j["time_us"] = zero_time ? 0 : pred.time_us;
  return j;
}

// ---------------------------------------------------------------- solve ----

struct SolveConfig {
  std::string hierarchy_path;
  std::string probs_path;
  std::string conds_path;
  std::string solver = "rts";
  int r = 1;
  int k = 1;
  int workers = 1;
  std::string out_path;
  bool zero_time = false;
};

int cmd_solve(const SolveConfig& cfg) {
  SolverKind solver = *parse_solver(cfg.solver);
  Hierarchy h = load_hierarchy(cfg.hierarchy_path);
  Budgets b{cfg.r, cfg.k};

  std::vector<std::int64_t> ids;
  std::vector<Prediction> preds;
  if (!cfg.conds_path.empty()) {
    // a conditionals file holds one instance
    HierarchicalDistribution cond = load_conditionals(cfg.conds_path, h);
    ids.push_back(0);
    if (solver == SolverKind::Rts) {
      preds.push_back(solve_rts(h, cond, b));
    } else {
      FlatDistribution flat = hier_to_flat(h, cond);
      preds = run_batch(solver, h, {flat}, b, {.workers = 1});
    }
  } else {
    std::vector<ProbRow> rows = load_probs_csv(cfg.probs_path, h.class_count());
    std::vector<FlatDistribution> dists;
    dists.reserve(rows.size());
    for (auto& row : rows) {
      ids.push_back(row.instance_id);
      dists.push_back(std::move(row.dist));
    }
    preds = run_batch(solver, h, dists, b, {.workers = cfg.workers});
  }

  std::ofstream file;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file) raise(Errc::ParseError, cfg.out_path + ": cannot open for writing");
  }
  std::ostream& out = cfg.out_path.empty() ? std::cout : file;
  for (std::size_t i = 0; i < preds.size(); ++i)
    out << prediction_json(ids[i], solver, b, preds[i], cfg.zero_time).dump() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- check ----

struct CheckConfig {
  std::string hierarchy_path;
  std::string probs_path;
  std::string r_list = "1";
  std::string k_list = "1";
  std::string solver_set = "mvm,kcg,rts,oracle";
  int workers = 1;
  std::string corrupt_solver;  // test fixture: perturbs that solver's masses
};

int cmd_check(const CheckConfig& cfg) {
  Hierarchy h = load_hierarchy(cfg.hierarchy_path);
  std::vector<ProbRow> rows = load_probs_csv(cfg.probs_path, h.class_count());
  if (rows.empty()) raise(Errc::EmptyBatch, cfg.probs_path + ": no instances");
  std::vector<FlatDistribution> dists;
  dists.reserve(rows.size());
  for (auto& row : rows) dists.push_back(std::move(row.dist));

  std::vector<int> rs = parse_int_list(cfg.r_list);
  std::vector<int> ks = parse_int_list(cfg.k_list);
  std::vector<SolverKind> solvers = parse_solver_set(cfg.solver_set);

  std::uint64_t cells = 0;
  for (int r : rs) {
    for (int k : ks) {
      Budgets b{r, k};
      std::vector<std::pair<SolverKind, std::vector<Prediction>>> results;
      for (SolverKind s : solvers) {
        if (s == SolverKind::Oracle && h.class_count() > 16) {
          std::cerr << "check: skipping oracle at r=" << r << " k=" << k
                    << " (class count above the exhaustive limit)\n";
          continue;
        }
        try {
          results.emplace_back(s, run_batch(s, h, dists, b, {.workers = cfg.workers}));
        } catch (const Error& e) {
          if (e.code() != Errc::TooLarge) throw;
          std::cerr << "check: skipping " << solver_name(s) << " at r=" << r << " k=" << k
                    << " (enumeration guard)\n";
        }
      }
      if (!cfg.corrupt_solver.empty()) {
        for (auto& [s, preds] : results)
          if (solver_name(s) == cfg.corrupt_solver)
            for (auto& p : preds) p.mass += 1e-3;
      }
      if (results.size() < 2) {
        std::cerr << "check: fewer than two solvers ran at r=" << r << " k=" << k << "\n";
        continue;
      }
      ++cells;
      for (std::size_t i = 0; i < dists.size(); ++i) {
        for (std::size_t a = 0; a < results.size(); ++a) {
          for (std::size_t c = a + 1; c < results.size(); ++c) {
            double ma = results[a].second[i].mass;
            double mc = results[c].second[i].mass;
            if (std::abs(ma - mc) > 1e-9) {
              std::cout << "disagreement at instance " << rows[i].instance_id << " r=" << r
                        << " k=" << k << ":";
              for (const auto& [s, preds] : results)
                std::cout << ' ' << solver_name(s) << '=' << format_double(preds[i].mass);
              std::cout << '\n';
              return kExitCheckFailed;
            }
          }
        }
      }
    }
  }
  std::cout << "check: " << dists.size() << " instances x " << cells
            << " budget cells, all solver masses agree within 1e-9\n";
  return kExitOk;
}

// ------------------------------------------------------------------ gen ----

struct GenConfig {
  int classes = 0;
  int count = 0;
  std::uint64_t seed = 0;
  double branching = 2.0;
  bool balanced = false;
  double alpha = 1.0;
  std::string out_hierarchy;
  std::string out_probs;
};

int cmd_gen(const GenConfig& cfg) {
  if (cfg.classes < 2) raise(Errc::InvalidArgument, "need at least 2 classes");
  if (cfg.count < 1) raise(Errc::InvalidArgument, "need at least 1 instance");
  Rng rng(cfg.seed);
  Hierarchy h = cfg.balanced ? balanced_binary_hierarchy(cfg.classes)
                             : random_hierarchy(cfg.classes, cfg.branching, rng);
  save_hierarchy(h, cfg.out_hierarchy);

  std::vector<ProbRow> rows;
  rows.reserve(static_cast<std::size_t>(cfg.count));
  for (int i = 0; i < cfg.count; ++i) {
    ProbRow row;
    row.instance_id = i;
    row.dist = random_flat(cfg.classes, cfg.alpha, rng);
    row.y_true = sample_class(row.dist, rng);
    rows.push_back(std::move(row));
  }
  save_probs_csv(rows, cfg.out_probs);
  std::cerr << "gen: wrote " << h.node_count() << "-node hierarchy and " << cfg.count
            << " instances\n";
  return kExitOk;
}

// ---------------------------------------------------------------- bench ----

struct BenchConfig {
  std::string hierarchy_path;
  std::string probs_path;
  int gen_classes = 0;
  int gen_count = 100;
  bool balanced = false;
  double branching = 2.0;
  double alpha = 1.0;
  std::uint64_t seed = 0;
  std::string r_list = "1,2,3";
  std::string k_list = "5,10";
  std::string solver_set = "mvm,kcg,rts";
  int workers = 1;
  std::string out_csv;
  bool zero_time = false;
};

struct BenchCell {
  MetricsRow metrics;
  bool skipped = false;
};

int cmd_bench(const BenchConfig& cfg) {
  std::optional<Hierarchy> h;
  std::vector<FlatDistribution> dists;
  std::vector<int> truths;
  if (!cfg.hierarchy_path.empty()) {
    if (cfg.probs_path.empty()) raise(Errc::InvalidArgument, "--probs is required with --hierarchy");
    h = load_hierarchy(cfg.hierarchy_path);
    std::vector<ProbRow> rows = load_probs_csv(cfg.probs_path, h->class_count());
    if (rows.empty()) raise(Errc::EmptyBatch, cfg.probs_path + ": no instances");
    for (auto& row : rows) {
      truths.push_back(row.y_true);
      dists.push_back(std::move(row.dist));
    }
  } else if (cfg.gen_classes >= 2) {
    if (cfg.gen_count < 1) raise(Errc::InvalidArgument, "need at least 1 generated instance");
    Rng rng(cfg.seed);
    h = cfg.balanced ? balanced_binary_hierarchy(cfg.gen_classes)
                     : random_hierarchy(cfg.gen_classes, cfg.branching, rng);
    for (int i = 0; i < cfg.gen_count; ++i) {
      dists.push_back(random_flat(cfg.gen_classes, cfg.alpha, rng));
      truths.push_back(sample_class(dists.back(), rng));
    }
  } else {
    raise(Errc::InvalidArgument, "either --hierarchy/--probs or --gen-classes is required");
  }

  std::vector<int> rs = parse_int_list(cfg.r_list);
  std::vector<int> ks = parse_int_list(cfg.k_list);
  std::vector<SolverKind> solvers = parse_solver_set(cfg.solver_set);

  std::vector<BenchCell> cells;
  for (SolverKind s : solvers) {
    for (int r : rs) {
      for (int k : ks) {
        Budgets b{r, k};
        BenchCell cell;
        cell.metrics.solver = std::string(solver_name(s));
        cell.metrics.r = r;
        cell.metrics.k = k;
        try {
          std::vector<Prediction> preds = run_batch(s, *h, dists, b, {.workers = cfg.workers});
          if (cfg.zero_time)
            for (auto& p : preds) p.time_us = 0;
          cell.metrics = evaluate(std::string(solver_name(s)), b, preds, truths);
        } catch (const Error& e) {
          if (e.code() != Errc::TooLarge) throw;
          cell.skipped = true;
        }
        cells.push_back(std::move(cell));
      }
    }
  }

  // aligned text table
  std::printf("%-8s %3s %4s %10s %9s %9s %12s %12s\n", "solver", "r", "k", "instances", "R",
              "|Y|", "t_us", "n");
  for (const BenchCell& cell : cells) {
    const MetricsRow& m = cell.metrics;
    if (cell.skipped) {
      std::printf("%-8s %3d %4d %10s %9s %9s %12s %12s  skipped (guard)\n", m.solver.c_str(),
                  m.r, m.k, "-", "-", "-", "-", "-");
      continue;
    }
    std::printf("%-8s %3d %4d %10llu %9.4f %9.4f %12.2f %12.1f\n", m.solver.c_str(), m.r, m.k,
                static_cast<unsigned long long>(m.instances), m.recall, m.avg_set_size,
                m.avg_time_us, m.avg_n);
  }
  // pop-count bound footer for the tree-search rows
  if (std::find(solvers.begin(), solvers.end(), SolverKind::Rts) != solvers.end() &&
      !dists.empty()) {
    HierarchicalDistribution first = flat_to_hier(*h, dists.front());
    for (int r : rs) {
      PopCountReport report = pop_count_report(*h, first, Budgets{r, ks.front()});
      std::printf("# rts pops on the first instance at r=%d k=%d: %llu; bound (ceil(log2 K))^r = %llu\n",
                  r, ks.front(), static_cast<unsigned long long>(report.pops),
                  static_cast<unsigned long long>(report.depth_bound));
    }
  }

  if (!cfg.out_csv.empty()) {
    std::ofstream csv(cfg.out_csv);
    if (!csv) raise(Errc::ParseError, cfg.out_csv + ": cannot open for writing");
    csv << "solver,r,k,instances,recall,avg_set_size,avg_time_us,avg_n,status\n";
    char buf[160];
    for (const BenchCell& cell : cells) {
      const MetricsRow& m = cell.metrics;
      if (cell.skipped) {
        csv << m.solver << ',' << m.r << ',' << m.k << ",,,,,,skipped (guard)\n";
        continue;
      }
      std::snprintf(buf, sizeof(buf), "%s,%d,%d,%llu,%.6f,%.6f,%.2f,%.4f,ok\n", m.solver.c_str(),
                    m.r, m.k, static_cast<unsigned long long>(m.instances), m.recall,
                    m.avg_set_size, m.avg_time_us, m.avg_n);
      csv << buf;
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"set-valued prediction over class hierarchies"};
  app.require_subcommand(1);

  SolveConfig solve_cfg;
  CLI::App* solve = app.add_subcommand("solve", "solve one budgeted prediction per instance");
  solve->add_option("--hierarchy", solve_cfg.hierarchy_path, "hierarchy file")->required();
  solve->add_option("--probs", solve_cfg.probs_path, "probability csv");
  solve->add_option("--conds", solve_cfg.conds_path, "conditionals file (one instance)");
  solve->add_option("--solver", solve_cfg.solver, "mvm|kcg|rts|oracle")->required();
  solve->add_option("--r", solve_cfg.r, "complexity budget")->check(CLI::PositiveNumber);
  solve->add_option("--k", solve_cfg.k, "size budget")->check(CLI::PositiveNumber);
  solve->add_option("--workers", solve_cfg.workers, "parallel workers (1 = serial)");
  solve->add_option("--out", solve_cfg.out_path, "output jsonl path (default stdout)");
  solve->add_flag("--zero-time", solve_cfg.zero_time, "zero timing fields for reproducible output");

  CheckConfig check_cfg;
  CLI::App* check = app.add_subcommand("check", "cross-check solver masses per instance");
  check->add_option("--hierarchy", check_cfg.hierarchy_path, "hierarchy file")->required();
  check->add_option("--probs", check_cfg.probs_path, "probability csv")->required();
  check->add_option("--r", check_cfg.r_list, "complexity budgets, comma separated");
  check->add_option("--k", check_cfg.k_list, "size budgets, comma separated");
  check->add_option("--solver-set", check_cfg.solver_set, "solvers to compare");
  check->add_option("--workers", check_cfg.workers, "parallel workers");
  check->add_option("--corrupt-solver", check_cfg.corrupt_solver, "")->group("");  // test fixture

  GenConfig gen_cfg;
  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic hierarchy and instances");
  gen->add_option("--classes", gen_cfg.classes, "number of classes K")->required();
  gen->add_option("--count", gen_cfg.count, "number of instances")->required();
  gen->add_option("--seed", gen_cfg.seed, "rng seed");
  gen->add_option("--branching", gen_cfg.branching, "mean branching factor");
  gen->add_flag("--balanced", gen_cfg.balanced, "balanced binary splits instead of random");
  gen->add_option("--alpha", gen_cfg.alpha, "dirichlet concentration");
  gen->add_option("--out-hierarchy", gen_cfg.out_hierarchy, "hierarchy output path")->required();
  gen->add_option("--out-probs", gen_cfg.out_probs, "probability csv output path")->required();

  BenchConfig bench_cfg;
  CLI::App* bench = app.add_subcommand("bench", "run a solver x (r, k) grid and report metrics");
  bench->add_option("--hierarchy", bench_cfg.hierarchy_path, "hierarchy file");
  bench->add_option("--probs", bench_cfg.probs_path, "probability csv");
  bench->add_option("--gen-classes", bench_cfg.gen_classes, "generate a dataset with K classes");
  bench->add_option("--count", bench_cfg.gen_count, "generated instance count");
  bench->add_flag("--balanced", bench_cfg.balanced, "balanced binary generated hierarchy");
  bench->add_option("--branching", bench_cfg.branching, "generated mean branching factor");
  bench->add_option("--alpha", bench_cfg.alpha, "dirichlet concentration");
  bench->add_option("--seed", bench_cfg.seed, "rng seed");
  bench->add_option("--r", bench_cfg.r_list, "complexity budgets, comma separated");
  bench->add_option("--k", bench_cfg.k_list, "size budgets, comma separated");
  bench->add_option("--solver-set", bench_cfg.solver_set, "solvers to run");
  bench->add_option("--workers", bench_cfg.workers, "parallel workers");
  bench->add_option("--out", bench_cfg.out_csv, "csv output path");
  bench->add_flag("--zero-time", bench_cfg.zero_time, "zero timing fields for reproducible output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*solve) {
      if (solve_cfg.probs_path.empty() == solve_cfg.conds_path.empty())
        raise(Errc::InvalidArgument, "provide exactly one of --probs and --conds");
      if (!parse_solver(solve_cfg.solver))
        raise(Errc::InvalidArgument, "unknown solver '" + solve_cfg.solver + "'");
      return cmd_solve(solve_cfg);
    }
    if (*check) return cmd_check(check_cfg);
    if (*gen) return cmd_gen(gen_cfg);
    if (*bench) return cmd_bench(bench_cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == Errc::TooLarge ? kExitResourceGuard : kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
