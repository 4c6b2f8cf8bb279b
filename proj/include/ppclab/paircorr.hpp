#pragma once

#include <cstdint>
#include <vector>

#include "ppclab/sequences.hpp"

namespace ppclab {

/// Distance to the nearest integer for points of [0,1): min(|x-y|, 1-|x-y|).
/// Throws std::invalid_argument on out-of-range input.
double wrap_distance(double x, double y);

struct PairCountTable {
  std::size_t n = 0;
  std::vector<std::int64_t> counts;  // counts[s-1] = ordered pairs with wrap < s/N

  std::int64_t at(std::size_t s) const;  // throws std::out_of_range
  std::size_t s_max() const { return counts.size(); }
};

struct FEstimate {
  std::size_t n = 0;
  std::size_t k = 0;
  double value = 0.0;  // max_{s<=k} |counts[s]/(2s) - N|
};

/// Serial O(N^2) reference: #{ordered (l,m), l != m : wrap < t}, strict "<".
/// Kept as the oracle for the sweep kernel.
std::int64_t pair_count_bruteforce(const SequenceSample& sample, double t);

/// Single-threshold count via one sort plus a circular two-pointer sweep.
/// Uses the identical floating-point predicate as the brute-force reference,
/// so the two agree exactly. `saturated` reports t > 1/2 (every pair counts).
struct PairCountResult {
  std::int64_t count = 0;
  bool saturated = false;
};
PairCountResult pair_count_at(const SequenceSample& sample, double t);

/// Counts for thresholds s/N, s = 1..s_max (requires 1 <= s_max <= N/2).
/// OpenMP-parallel across thresholds; each sweep is an independent O(N) pass
/// over the shared sorted copy, so results do not depend on schedule.
PairCountTable pair_counts_fast(const SequenceSample& sample, std::size_t s_max);

/// R(s,N) = counts[s]/N; tends to 2s for a Poissonian-pair-correlation
/// sequence.
double ppc_statistic(const PairCountTable& table, std::size_t s);

FEstimate f_estimate(const PairCountTable& table, std::size_t k);

namespace detail {
/// Unordered-pair count below threshold t (<= 1/2) over an already-sorted
/// sample; the building block shared by the sweep kernels and the
/// incremental table extension in select_K.
std::int64_t sorted_unordered_count(const std::vector<double>& sorted, double t);
}  // namespace detail

}  // namespace ppclab
