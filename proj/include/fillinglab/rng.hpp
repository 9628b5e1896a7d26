#pragma once

#include <cstdint>
#include <random>

#include "fillinglab/rational.hpp"

namespace fillinglab {

// Seedable deterministic generator. The engine's output sequence is pinned by
// the C++ standard, and the bounded helpers below avoid std::uniform_int_
// distribution on purpose: its mapping is implementation-defined, and reports
// must be reproducible from (config, seed) alone.
class Rng {
 public:
  static constexpr const char* kName = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [lo, hi], inclusive. Modulo mapping; bias is irrelevant here.
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  bool coin() { return next() & 1; }

  // Nonzero numerators allowed; denominator always positive.
  Rational rational(long num_bound, long den_bound) {
    return make_rational(Integer(range(-num_bound, num_bound)),
                         Integer(range(1, den_bound)));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fillinglab
