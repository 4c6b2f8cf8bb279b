#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ppclab {

/// Fractional part x - floor(x), always in [0,1).
/// Throws std::invalid_argument on non-finite input.
double frac(double x);

enum class SequenceKind {
  kronecker,       // x_n = {n*alpha}
  quadratic,       // x_n = {n^2*alpha}
  vdc,             // radical inverse of n in the given base
  sqrt_n,          // {sqrt(n)} over non-square n
  uniform_random,  // seeded splitmix64, 53-bit mantissa scaling
  file,            // points read from a text file
};

SequenceKind parse_kind(const std::string& name);
std::string kind_name(SequenceKind kind);

// Canonical demo irrationals: {(sqrt(5)-1)/2} for kronecker, sqrt(2) for
// quadratic.
double default_alpha(SequenceKind kind);

struct SequenceSpec {
  SequenceKind kind = SequenceKind::uniform_random;
  double alpha = 0.0;       // kronecker / quadratic
  unsigned base = 2;        // vdc
  std::uint64_t seed = 0;   // uniform_random
  std::string path;         // file
  std::size_t n = 0;

  void validate() const;  // throws std::invalid_argument
};

struct SequenceSample {
  std::vector<double> values;
  SequenceSpec spec;

  std::size_t size() const { return values.size(); }
};

/// splitmix64 (Steele/Lea/Flood); fixed algorithm so seeded samples are
/// bit-identical across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0,1): top 53 bits scaled by 2^-53.
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// Radical inverse of n >= 1 in the given base (van der Corput).
double radical_inverse(std::uint64_t n, unsigned base);

SequenceSample generate(const SequenceSpec& spec);

/// Point-file reader: one decimal literal per line, values in [0,1),
/// '#'-prefixed comment lines skipped. Throws std::runtime_error with a line
/// number on parse or range failures, and on an empty sample.
SequenceSample load_points(const std::string& path);

/// Writes one value per line at 17 significant digits, atomically
/// (temp file + rename).
void write_points(const SequenceSample& sample, const std::string& path);

}  // namespace ppclab
