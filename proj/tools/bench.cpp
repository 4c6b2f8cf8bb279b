// Timing comparison between the serial reference counters and the sweep
// kernels, and between 1-thread and all-thread sweeps.
#include <cstdio>
#include <cstdlib>

#include "ppclab/discrepancy.hpp"
#include "ppclab/paircorr.hpp"
#include "ppclab/sequences.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double now() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return static_cast<double>(std::clock()) / CLOCKS_PER_SEC;
#endif
}

void bench_counts(std::size_t n, std::size_t s_max) {
  ppclab::SequenceSpec spec;
  spec.kind = ppclab::SequenceKind::uniform_random;
  spec.seed = 7;
  spec.n = n;
  ppclab::SequenceSample sample = ppclab::generate(spec);

  double t0 = now();
  std::int64_t brute_total = 0;
  for (std::size_t s = 1; s <= s_max; ++s) {
    brute_total += ppclab::pair_count_bruteforce(
        sample, static_cast<double>(s) / static_cast<double>(n));
  }
  double t_brute = now() - t0;

#ifdef _OPENMP
  int max_threads = omp_get_max_threads();
  omp_set_num_threads(1);
#endif
  t0 = now();
  ppclab::PairCountTable serial = ppclab::pair_counts_fast(sample, s_max);
  double t_serial = now() - t0;

#ifdef _OPENMP
  omp_set_num_threads(max_threads);
#endif
  t0 = now();
  ppclab::PairCountTable parallel = ppclab::pair_counts_fast(sample, s_max);
  double t_parallel = now() - t0;

  std::int64_t sweep_total = 0;
  for (auto c : parallel.counts) sweep_total += c;
  const char* ok =
      (brute_total == sweep_total && serial.counts == parallel.counts)
          ? "ok"
          : "MISMATCH";
  std::printf(
      "counts  N=%-8zu s_max=%-3zu  brute %.3fs  sweep(1T) %.3fs  "
      "sweep(all) %.3fs  [%s]\n",
      n, s_max, t_brute, t_serial, t_parallel, ok);
}

void bench_oracle(std::size_t n, std::size_t grid) {
  ppclab::SequenceSpec spec;
  spec.kind = ppclab::SequenceKind::uniform_random;
  spec.seed = 11;
  spec.n = n;
  ppclab::SequenceSample sample = ppclab::generate(spec);

  double t0 = now();
  ppclab::DiscrepancyReport exact = ppclab::star_discrepancy_exact(sample);
  double t_exact = now() - t0;

  t0 = now();
  double oracle = ppclab::star_discrepancy_grid_oracle(sample, grid);
  double t_oracle = now() - t0;

  std::printf(
      "d_star  N=%-8zu grid=%-8zu exact %.3fs  oracle %.3fs  gap %.3g\n", n,
      grid, t_exact, t_oracle, exact.d_star - oracle);
}

}  // namespace

int main() {
#ifdef _OPENMP
  if (const char* env = std::getenv("PPCLAB_THREADS")) {
    int threads = std::atoi(env);
    if (threads > 0) omp_set_num_threads(threads);
  }
  std::printf("threads: %d\n", omp_get_max_threads());
#endif
  bench_counts(2000, 40);
  bench_counts(20000, 40);
  bench_counts(100000, 100);
  bench_oracle(100000, 1000000);
  return 0;
}
