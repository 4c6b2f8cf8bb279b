#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ppclab/paircorr.hpp"
#include "ppclab/sequences.hpp"

namespace ppclab {

/// Counts of points in consecutive subintervals of length K/N, plus one
/// trailing remainder bin [floor(N/K)*K/N, 1) that is kept even when it is
/// degenerate. Indices wrap modulo floor(N/K)+1.
struct BinProfile {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<std::int64_t> bins;  // length floor(N/K)+1

  std::int64_t at(std::int64_t i) const;  // circular index
  std::size_t num_bins() const { return bins.size(); }
  double bin_width() const { return static_cast<double>(k) / static_cast<double>(n); }
};

BinProfile bin_counts(const SequenceSample& sample, std::size_t k);

/// Ordered pair count at threshold L*K/N (strict "<"). `saturated` flags
/// LK/N > 1/2, where every pair qualifies.
struct HCount {
  std::int64_t count = 0;
  bool saturated = false;
};
HCount h_count(const SequenceSample& sample, std::size_t k, std::size_t L);

struct WindowStats {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t L = 0;
  std::vector<std::int64_t> window_sums;  // G_i = A_i + ... + A_{i+L-1}, circular
  double z = 0.0;        // Z_L = (1/2LKN) * sum G_i^2
  double gamma = 0.0;    // from its defining squared-window-difference sum
  double gamma_telescoped = 0.0;  // Z_L - ((L-1)/L) Z_{L-1}; equals gamma
  std::int64_t pair_count = 0;    // count at threshold LK/N
};

WindowStats window_stats(const BinProfile& profile, std::size_t L,
                         const SequenceSample& sample);

/// max(Z_1, Z_2 - Z_1/2, ..., Z_K - ((K-1)/K) Z_{K-1}); always at least
/// 2 Z_K / (K+1) for positive inputs.
double chain_lower_bound(const std::vector<double>& z_values);

struct MinimizerBlocks {
  std::size_t n = 0;
  std::size_t k = 0;
  double b = 0.0;
  double h = 0.0;
  double g_low = 0.0;     // K(NB+H) / (K + floor(NB/K))
  double g_high = 0.0;    // K(N(1-B)-H) / (floor(N/K) - K - floor(NB/K))
  std::int64_t low_count = 0;
  std::int64_t high_count = 0;
  double objective = 0.0;  // low_count*g_low^2 + high_count*g_high^2
};

/// Throws std::domain_error naming the violated condition when
/// N - NB - H <= 0 or K^2 > H/5.
MinimizerBlocks minimizer_blocks(std::size_t n, std::size_t k, double b, double h);

struct MinimizerReport {
  MinimizerBlocks blocks;
  std::size_t trials = 0;
  std::size_t violations = 0;      // random feasible vectors beating the blocks
  double best_random_objective = 0.0;
  double projection_rel_error = 0.0;  // vs the block values
  bool projection_converged = false;
  bool perturbation_stable = false;   // no descent direction found locally
};

/// Randomized + projection verification that the two-block configuration
/// minimizes sum G_i^2 under the total-sum and block-sum constraints.
MinimizerReport verify_minimizer(std::size_t n, std::size_t k, double b,
                                 double h, std::size_t trials,
                                 std::uint64_t seed = 1);

struct ChainLink {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct ChainReport {
  std::size_t n = 0;
  std::size_t k = 0;
  double f_value = 0.0;
  double h_value = 0.0;
  std::vector<ChainLink> links;
  bool all_identities_hold = false;  // the by-construction identities only
};

/// Evaluates every identity and inequality of the lower-bound chain on the
/// sample's realized quantities. Requires K feasible against the empirical F.
ChainReport final_chain_report(const SequenceSample& sample, std::size_t k);

}  // namespace ppclab
