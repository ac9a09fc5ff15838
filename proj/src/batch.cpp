#include "hsvp/batch.hpp"

#include <chrono>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hsvp {

std::optional<SolverKind> parse_solver(std::string_view name) {
  if (name == "mvm") return SolverKind::Mvm;
  if (name == "kcg") return SolverKind::Kcg;
  if (name == "rts") return SolverKind::Rts;
  if (name == "oracle") return SolverKind::Oracle;
  return std::nullopt;
}

std::string_view solver_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::Mvm: return "mvm";
    case SolverKind::Kcg: return "kcg";
    case SolverKind::Rts: return "rts";
    case SolverKind::Oracle: return "oracle";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_us(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count();
}

// Per-instance work as a closure over shared immutable state.
using InstanceFn = std::function<Prediction(const FlatDistribution&)>;

InstanceFn make_instance_fn(SolverKind kind, const Hierarchy& h, Budgets b,
                            const BatchOptions& opt) {
  switch (kind) {
    case SolverKind::Mvm: {
      auto matrix = std::make_shared<FeasibleMatrix>(build_matrix(h, b));
      return [matrix](const FlatDistribution& row) {
        auto start = Clock::now();
        Prediction pred = solve_mvm(*matrix, row);
        pred.time_us = elapsed_us(start);
        return pred;
      };
    }
    case SolverKind::Kcg: {
      // template instance: weights and conflict graph shared, masses per row
      auto tmpl = std::make_shared<KcgInstance>(
          build_kcg_instance(h, NodeMasses{std::vector<double>(
                                    static_cast<std::size_t>(h.node_count()), 0.0)},
                             b));
      return [tmpl, &h](const FlatDistribution& row) {
        auto start = Clock::now();
        KcgInstance inst = *tmpl;
        inst.item_mass = all_node_masses(h, row).mass;
        Prediction pred = solve_kcg(inst);
        pred.time_us = elapsed_us(start);
        return pred;
      };
    }
    case SolverKind::Rts: {
      RtsOptions rts_opt;
      if (opt.check_disjoint) rts_opt.check_disjoint = true;
      return [&h, b, rts_opt](const FlatDistribution& row) {
        HierarchicalDistribution cond = flat_to_hier(h, row);  // input prep, untimed
        auto start = Clock::now();
        Prediction pred = solve_rts(h, cond, b, rts_opt);
        pred.time_us = elapsed_us(start);
        return pred;
      };
    }
    case SolverKind::Oracle:
      return [&h, b](const FlatDistribution& row) {
        auto start = Clock::now();
        Prediction pred = oracle_solve(h, row, b);
        pred.time_us = elapsed_us(start);
        return pred;
      };
  }
  raise(Errc::InvalidArgument, "unknown solver");
}

}  // namespace

std::vector<Prediction> run_batch_serial(SolverKind kind, const Hierarchy& h,
                                         const std::vector<FlatDistribution>& rows, Budgets b,
                                         const BatchOptions& opt) {
  InstanceFn fn = make_instance_fn(kind, h, b, opt);
  std::vector<Prediction> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out[i] = fn(rows[i]);
  return out;
}

std::vector<Prediction> run_batch_parallel(SolverKind kind, const Hierarchy& h,
                                           const std::vector<FlatDistribution>& rows, Budgets b,
                                           const BatchOptions& opt) {
#ifdef _OPENMP
  InstanceFn fn = make_instance_fn(kind, h, b, opt);
  std::vector<Prediction> out(rows.size());
  std::exception_ptr failure;
  const auto n = static_cast<std::int64_t>(rows.size());
  if (opt.workers > 1) omp_set_num_threads(opt.workers);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(rows[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
#else
  return run_batch_serial(kind, h, rows, b, opt);
#endif
}

std::vector<Prediction> run_batch(SolverKind kind, const Hierarchy& h,
                                  const std::vector<FlatDistribution>& rows, Budgets b,
                                  const BatchOptions& opt) {
  if (opt.workers == 1) return run_batch_serial(kind, h, rows, b, opt);
  return run_batch_parallel(kind, h, rows, b, opt);
}

}  // namespace hsvp
