#include "ppclab/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ppclab {

std::int64_t count_in_prefix_interval(const SequenceSample& sample, double a) {
  if (!(a >= 0.0 && a <= 1.0)) {
    throw std::invalid_argument("count_in_prefix_interval: a must lie in [0,1]");
  }
  std::int64_t count = 0;
  for (double v : sample.values) {
    if (v < a) ++count;
  }
  return count;
}

DiscrepancyReport star_discrepancy_exact(const SequenceSample& sample) {
  const std::size_t n = sample.size();
  if (n == 0) throw std::invalid_argument("star_discrepancy_exact: empty sample");

  std::vector<double> y = sample.values;
  std::sort(y.begin(), y.end());

  DiscrepancyReport report;
  report.n = n;
  double best = 0.0;
  double witness = y[0];
  WitnessSide side = WitnessSide::left;
  // i/n is evaluated as a division, matching the grid oracle's count/n term,
  // so the oracle can never exceed this value by a rounding artifact.
  const double nn = static_cast<double>(n);
  for (std::size_t i = 1; i <= n; ++i) {
    double xi = y[i - 1];
    double up = static_cast<double>(i) / nn - xi;        // sup as a -> xi+
    double down = xi - static_cast<double>(i - 1) / nn;  // attained at a = xi
    if (up > best) {
      best = up;
      witness = xi;
      side = WitnessSide::right;
    }
    if (down > best) {
      best = down;
      witness = xi;
      side = WitnessSide::left;
    }
  }
  report.d_star = best;
  report.witness_a = witness;
  report.side = side;
  report.n_d_star = static_cast<double>(n) * best;
  return report;
}

namespace {

double prefix_deviation(const std::vector<double>& sorted, double a) {
  auto cnt = static_cast<double>(
      std::lower_bound(sorted.begin(), sorted.end(), a) - sorted.begin());
  return std::fabs(cnt / static_cast<double>(sorted.size()) - a);
}

}  // namespace

double star_discrepancy_grid_oracle(const SequenceSample& sample,
                                    std::size_t grid_points) {
  const std::size_t n = sample.size();
  if (n == 0) throw std::invalid_argument("grid oracle: empty sample");
  if (grid_points < n) throw std::invalid_argument("grid oracle: grid_points < N");

  std::vector<double> y = sample.values;
  std::sort(y.begin(), y.end());

  const double eps = 0x1.0p-40;
  double best = 0.0;
#pragma omp parallel for reduction(max : best) schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    best = std::max(best, prefix_deviation(y, y[i]));
    best = std::max(best, prefix_deviation(y, std::max(0.0, y[i] - eps)));
    best = std::max(best, prefix_deviation(y, std::min(1.0, y[i] + eps)));
  }
#pragma omp parallel for reduction(max : best) schedule(static)
  for (std::size_t j = 0; j <= grid_points; ++j) {
    double a = static_cast<double>(j) / static_cast<double>(grid_points);
    best = std::max(best, prefix_deviation(y, a));
  }
  return best;
}

double theorem_bound(std::size_t n, double f_value) {
  if (n < 1) throw std::invalid_argument("theorem_bound: n must be >= 1");
  if (f_value < 0.0 || !std::isfinite(f_value)) {
    throw std::invalid_argument("theorem_bound: f_value must be non-negative");
  }
  double nn = static_cast<double>(n);
  return 5.0 * std::max(std::pow(nn, 0.8), std::sqrt(nn * f_value));
}

KSelection select_K_rule(
    std::size_t n, const std::function<double(std::size_t)>& f_at_k_squared) {
  if (n < 32) {
    throw std::invalid_argument("select_K: N < 32 is below any meaningful regime");
  }
  const double nn = static_cast<double>(n);
  const auto k_max =
      static_cast<std::size_t>(std::floor(std::pow(nn, 0.4) + 1e-9));
  const double half_pow = 0.5 * std::pow(nn, 0.4);

  for (std::size_t k = 1; k <= k_max; ++k) {
    double f = f_at_k_squared(k);
    if (f < 0.0 || !std::isfinite(f)) {
      throw std::invalid_argument("select_K: F must be finite and non-negative");
    }
    double ratio =
        f == 0.0 ? std::numeric_limits<double>::infinity() : nn / f;
    double lo = std::min(half_pow, ratio);
    // tolerance absorbs rounding in pow/div when the bound is an exact integer
    if (lo <= static_cast<double>(k) + 1e-9 * std::max(1.0, lo)) {
      return {k, true};
    }
  }
  return {k_max, false};
}

namespace {

struct KSelectionDetail {
  std::size_t k = 0;
  bool feasible = false;
  double f_value = 0.0;  // empirical F(K^2, N) at the returned K
};

// Applies the selection rule to the empirical F, extending the deviation
// maximum incrementally: F(K^2,N) is a running max over s <= K^2, so the
// count sweeps are shared between candidates and stop at the first feasible K.
KSelectionDetail select_K_detail(const SequenceSample& sample) {
  const std::size_t n = sample.size();
  if (n < 32) {
    throw std::invalid_argument("select_K: N < 32 is below any meaningful regime");
  }
  const double nn = static_cast<double>(n);

  std::vector<double> y = sample.values;
  std::sort(y.begin(), y.end());

  double f_run = 0.0;
  std::size_t s_done = 0;
  std::vector<double> chunk;
  auto empirical_f = [&](std::size_t k) {
    // K <= floor(N^{2/5}) keeps s = K^2 within the K <= N/2 hypothesis.
    const std::size_t target = k * k;
    chunk.assign(target - s_done, 0.0);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::size_t s = s_done + 1; s <= target; ++s) {
      double t = static_cast<double>(s) / nn;
      auto cnt = static_cast<double>(2 * detail::sorted_unordered_count(y, t));
      chunk[s - s_done - 1] =
          std::fabs(cnt / (2.0 * static_cast<double>(s)) - nn);
    }
    for (double dev : chunk) f_run = std::max(f_run, dev);
    s_done = target;
    return f_run;
  };

  KSelection sel = select_K_rule(n, empirical_f);
  return {sel.k, sel.feasible, f_run};
}

}  // namespace

KSelection select_K(const SequenceSample& sample) {
  KSelectionDetail d = select_K_detail(sample);
  return {d.k, d.feasible};
}

BoundCheck bound_check(const SequenceSample& sample) {
  KSelectionDetail sel = select_K_detail(sample);
  DiscrepancyReport disc = star_discrepancy_exact(sample);

  BoundCheck check;
  check.n = sample.size();
  check.k = sel.k;
  check.f_value = sel.f_value;
  check.h_value = theorem_bound(sample.size(), sel.f_value);
  check.n_d_star = disc.n_d_star;
  check.satisfied = check.n_d_star <= check.h_value;
  check.k_feasible = sel.feasible;
  return check;
}

}  // namespace ppclab
