#include "ppclab/sequences.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>

namespace ppclab {

double frac(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("frac: non-finite input");
  }
  double r = x - std::floor(x);
  // x just below an integer can round up to 1.0; fold back into [0,1).
  if (r >= 1.0) r = 0.0;
  return r;
}

SequenceKind parse_kind(const std::string& name) {
  if (name == "kronecker") return SequenceKind::kronecker;
  if (name == "quadratic") return SequenceKind::quadratic;
  if (name == "vdc") return SequenceKind::vdc;
  if (name == "sqrt_n") return SequenceKind::sqrt_n;
  if (name == "uniform_random") return SequenceKind::uniform_random;
  if (name == "file") return SequenceKind::file;
  throw std::invalid_argument("unknown sequence kind: " + name);
}

std::string kind_name(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::kronecker: return "kronecker";
    case SequenceKind::quadratic: return "quadratic";
    case SequenceKind::vdc: return "vdc";
    case SequenceKind::sqrt_n: return "sqrt_n";
    case SequenceKind::uniform_random: return "uniform_random";
    case SequenceKind::file: return "file";
  }
  throw std::invalid_argument("bad kind enum");
}

double default_alpha(SequenceKind kind) {
  if (kind == SequenceKind::quadratic) return std::sqrt(2.0);
  return (std::sqrt(5.0) - 1.0) / 2.0;  // golden-ratio conjugate, already in [0,1)
}

void SequenceSpec::validate() const {
  if (n < 1) throw std::invalid_argument("spec: n must be >= 1");
  switch (kind) {
    case SequenceKind::kronecker:
    case SequenceKind::quadratic:
      if (!std::isfinite(alpha)) {
        throw std::invalid_argument("spec: alpha must be finite");
      }
      break;
    case SequenceKind::vdc:
      if (base < 2) throw std::invalid_argument("spec: vdc base must be >= 2");
      break;
    case SequenceKind::file:
      if (path.empty()) throw std::invalid_argument("spec: file kind needs a path");
      break;
    default:
      break;
  }
}

double radical_inverse(std::uint64_t n, unsigned base) {
  double inv_base = 1.0 / static_cast<double>(base);
  double result = 0.0;
  double digit_scale = inv_base;
  while (n > 0) {
    result += static_cast<double>(n % base) * digit_scale;
    digit_scale *= inv_base;
    n /= base;
  }
  return result;
}

namespace {

bool is_perfect_square(std::uint64_t m) {
  auto r = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(m))));
  return r * r == m;
}

}  // namespace

SequenceSample generate(const SequenceSpec& spec) {
  spec.validate();
  if (spec.kind == SequenceKind::file) {
    SequenceSample sample = load_points(spec.path);
    sample.spec = spec;
    sample.spec.n = sample.values.size();
    return sample;
  }

  SequenceSample sample;
  sample.spec = spec;
  sample.values.reserve(spec.n);
  switch (spec.kind) {
    case SequenceKind::kronecker:
      for (std::size_t i = 1; i <= spec.n; ++i) {
        sample.values.push_back(frac(static_cast<double>(i) * spec.alpha));
      }
      break;
    case SequenceKind::quadratic:
      for (std::size_t i = 1; i <= spec.n; ++i) {
        double sq = static_cast<double>(i) * static_cast<double>(i);
        sample.values.push_back(frac(sq * spec.alpha));
      }
      break;
    case SequenceKind::vdc:
      for (std::size_t i = 1; i <= spec.n; ++i) {
        sample.values.push_back(radical_inverse(i, spec.base));
      }
      break;
    case SequenceKind::sqrt_n: {
      // {sqrt(n)} over the first n non-squares; squares give 0 trivially.
      std::uint64_t m = 1;
      while (sample.values.size() < spec.n) {
        ++m;
        if (is_perfect_square(m)) continue;
        sample.values.push_back(frac(std::sqrt(static_cast<double>(m))));
      }
      break;
    }
    case SequenceKind::uniform_random: {
      SplitMix64 rng(spec.seed);
      for (std::size_t i = 0; i < spec.n; ++i) {
        sample.values.push_back(rng.next_double());
      }
      break;
    }
    case SequenceKind::file:
      break;  // handled above
  }
  return sample;
}

SequenceSample load_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open point file: " + path);

  SequenceSample sample;
  sample.spec.kind = SequenceKind::file;
  sample.spec.path = path;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    const char* begin = line.c_str() + start;
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(begin, &end);
    bool trailing_junk = false;
    for (const char* p = end; *p; ++p) {
      if (*p != ' ' && *p != '\t' && *p != '\r') trailing_junk = true;
    }
    if (end == begin || trailing_junk || errno != 0) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": cannot parse point value");
    }
    if (!(v >= 0.0 && v < 1.0)) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": value outside [0,1)");
    }
    sample.values.push_back(v);
  }
  if (sample.values.empty()) {
    throw std::invalid_argument(path + ": empty sample");
  }
  sample.spec.n = sample.values.size();
  return sample;
}

void write_points(const SequenceSample& sample, const std::string& path) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    char buf[64];
    for (double v : sample.values) {
      std::snprintf(buf, sizeof(buf), "%.17g\n", v);
      out << buf;
    }
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw std::runtime_error("rename failed: " + path);
  }
}

}  // namespace ppclab
