#include "hsvp/solver_mvm.hpp"

#include <algorithm>
#include <chrono>

namespace hsvp {

bool FeasibleMatrix::incidence(std::uint64_t i, int j) const {
  auto lo = row_classes_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i]);
  auto hi = row_classes_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i + 1]);
  return std::binary_search(lo, hi, j);
}

ClassSet FeasibleMatrix::row_set(std::uint64_t i) const {
  ClassSet out;
  for (std::uint64_t o = row_offsets_[i]; o < row_offsets_[i + 1]; ++o)
    out.members.push_back(row_classes_[o]);
  return out;
}

FeasibleMatrix build_matrix(const Hierarchy& h, Budgets b, std::uint64_t guard) {
  std::vector<ClassSet> feasible = enumerate_feasible(h, b, guard);
  FeasibleMatrix m;
  m.cols_ = h.class_count();
  m.budgets_ = b;
  m.row_offsets_.reserve(feasible.size() + 1);
  m.row_offsets_.push_back(0);
  std::uint64_t total = 0;
  for (const ClassSet& y : feasible) total += y.size();
  m.row_classes_.reserve(total);
  for (const ClassSet& y : feasible) {
    for (int c : y.members) m.row_classes_.push_back(c);
    m.row_offsets_.push_back(m.row_classes_.size());
  }
  return m;
}

Prediction solve_mvm(const FeasibleMatrix& m, const FlatDistribution& d) {
  if (d.class_count() != m.cols())
    raise(Errc::DimensionMismatch, "distribution has " + std::to_string(d.class_count()) +
                                       " classes, matrix has " + std::to_string(m.cols()) +
                                       " columns");
  const auto start = std::chrono::steady_clock::now();

  const std::uint64_t rows = m.rows();
  std::vector<double> products(rows, 0.0);
  for (std::uint64_t i = 0; i < rows; ++i) {
    double sum = 0.0;
    for (std::uint64_t o = m.row_offsets_[i]; o < m.row_offsets_[i + 1]; ++o)
      sum += d.probs[static_cast<std::size_t>(m.row_classes_[o])];
    products[i] = sum;
  }
  // strict > keeps the earliest row on ties
  std::uint64_t best = 0;
  for (std::uint64_t i = 1; i < rows; ++i)
    if (products[i] > products[best]) best = i;

  Prediction pred;
  pred.set = m.row_set(best);
  pred.mass = products[best];
  pred.n = rows;
  pred.time_us = std::chrono::duration_cast<std::chrono::microseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  return pred;
}

}  // namespace hsvp
