#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "ppclab/paircorr.hpp"
#include "ppclab/sequences.hpp"

namespace ppclab {

enum class WitnessSide { left, right };

struct DiscrepancyReport {
  std::size_t n = 0;
  double d_star = 0.0;
  double witness_a = 0.0;     // sample value attaining the supremum
  WitnessSide side = WitnessSide::left;  // right: sup reached as a -> witness_a+
  double n_d_star = 0.0;
};

/// A_N([0,a)) = #{n : x_n < a}, 0 <= a <= 1.
std::int64_t count_in_prefix_interval(const SequenceSample& sample, double a);

/// Exact star-discrepancy via the order-statistics formula
///   D*_N = max_i max(i/N - x_(i), x_(i) - (i-1)/N).
DiscrepancyReport star_discrepancy_exact(const SequenceSample& sample);

/// Certified lower bound on D*_N: evaluates |A_N([0,a))/N - a| at all sample
/// values, at sample values +/- 2^-40, and on a uniform grid. Lies within
/// 1/grid_points of the exact value.
double star_discrepancy_grid_oracle(const SequenceSample& sample,
                                    std::size_t grid_points);

/// H(N,K) = 5 * max(N^{4/5}, sqrt(N * f_value)).
double theorem_bound(std::size_t n, double f_value);

struct KSelection {
  std::size_t k = 0;
  bool feasible = false;
};

/// The bare selection rule: smallest K in 1..floor(N^{2/5}) with
/// min(N^{2/5}/2, N / F(K^2,N)) <= K, where f_at_k_squared(K) supplies
/// F(K^2,N) (empirical or hypothetical; 0 reads as N/F = +inf). Falls back to
/// {floor(N^{2/5}), false} when no K qualifies.
KSelection select_K_rule(std::size_t n,
                         const std::function<double(std::size_t)>& f_at_k_squared);

/// Scans K = 1..floor(N^{2/5}) ascending against the empirical F(K^2,N) and
/// returns the smallest K with min(N^{2/5}/2, N/F(K^2,N)) <= K. F == 0 is
/// read as N/F = +inf. Requires N >= 32.
KSelection select_K(const SequenceSample& sample);

struct BoundCheck {
  std::size_t n = 0;
  std::size_t k = 0;
  double f_value = 0.0;   // empirical F(K^2, N)
  double h_value = 0.0;   // 5 * max(N^{4/5}, sqrt(N*F))
  double n_d_star = 0.0;
  bool satisfied = false;  // n_d_star <= h_value
  bool k_feasible = false;
};

BoundCheck bound_check(const SequenceSample& sample);

}  // namespace ppclab
