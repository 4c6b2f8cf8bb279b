#include "ppclab/paircorr.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace ppclab {

double wrap_distance(double x, double y) {
  if (!(x >= 0.0 && x < 1.0) || !(y >= 0.0 && y < 1.0)) {
    throw std::invalid_argument("wrap_distance: inputs must lie in [0,1)");
  }
  double d = std::fabs(x - y);
  double w = 1.0 - d;
  return d < w ? d : w;
}

std::int64_t PairCountTable::at(std::size_t s) const {
  if (s < 1 || s > counts.size()) {
    throw std::out_of_range("PairCountTable: s out of range");
  }
  return counts[s - 1];
}

std::int64_t pair_count_bruteforce(const SequenceSample& sample, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("pair_count_bruteforce: threshold must be positive");
  }
  const auto& x = sample.values;
  const std::size_t n = x.size();
  std::int64_t unordered = 0;
  for (std::size_t l = 0; l + 1 < n; ++l) {
    for (std::size_t m = l + 1; m < n; ++m) {
      double d = std::fabs(x[l] - x[m]);
      double w = 1.0 - d;
      double wrap = d < w ? d : w;
      if (wrap < t) ++unordered;
    }
  }
  return 2 * unordered;
}

namespace detail {

// Unordered count of pairs with wrap distance strictly below t, over sorted
// values, t <= 1/2. Written against the same floating-point predicate as the
// brute-force loop: with d = y_j - y_i (exact for sorted pairs),
// wrap < t  <=>  d < t  or  1-d < t, and the two clauses are disjoint for
// t <= 1/2. Both clauses are monotone in d, so each admits a two-pointer
// sweep.
std::int64_t sorted_unordered_count(const std::vector<double>& y, double t) {
  const std::size_t n = y.size();
  std::int64_t close = 0;
  std::size_t e = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (e < i + 1) e = i + 1;
    while (e < n && (y[e] - y[i]) < t) ++e;
    close += static_cast<std::int64_t>(e - i - 1);
  }
  std::int64_t wrap = 0;
  std::size_t b = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (b < i + 1) b = i + 1;
    while (b < n && !((1.0 - (y[b] - y[i])) < t)) ++b;
    wrap += static_cast<std::int64_t>(n - b);
  }
  return close + wrap;
}

}  // namespace detail

PairCountResult pair_count_at(const SequenceSample& sample, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("pair_count_at: threshold must be positive");
  }
  const std::size_t n = sample.size();
  if (t > 0.5) {
    // Wrap distance never exceeds 1/2, so every ordered pair qualifies.
    auto nn = static_cast<std::int64_t>(n);
    return {nn * (nn - 1), true};
  }
  std::vector<double> y = sample.values;
  std::sort(y.begin(), y.end());
  return {2 * detail::sorted_unordered_count(y, t), false};
}

PairCountTable pair_counts_fast(const SequenceSample& sample, std::size_t s_max) {
  const std::size_t n = sample.size();
  if (s_max < 1 || 2 * s_max > n) {
    throw std::invalid_argument("pair_counts_fast: need 1 <= s_max <= N/2");
  }
  std::vector<double> y = sample.values;
  std::sort(y.begin(), y.end());

  PairCountTable table;
  table.n = n;
  table.counts.assign(s_max, 0);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t s = 1; s <= s_max; ++s) {
    double t = static_cast<double>(s) / static_cast<double>(n);
    table.counts[s - 1] = 2 * detail::sorted_unordered_count(y, t);
  }
  return table;
}

double ppc_statistic(const PairCountTable& table, std::size_t s) {
  return static_cast<double>(table.at(s)) / static_cast<double>(table.n);
}

FEstimate f_estimate(const PairCountTable& table, std::size_t k) {
  if (k < 1 || k > table.s_max()) {
    throw std::invalid_argument("f_estimate: k out of range");
  }
  FEstimate est;
  est.n = table.n;
  est.k = k;
  est.value = 0.0;
  for (std::size_t s = 1; s <= k; ++s) {
    double dev = std::fabs(static_cast<double>(table.counts[s - 1]) /
                               (2.0 * static_cast<double>(s)) -
                           static_cast<double>(table.n));
    if (dev > est.value) est.value = dev;
  }
  return est;
}

}  // namespace ppclab
