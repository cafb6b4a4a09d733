#pragma once

#include <cstdint>
#include <random>

namespace medr {

// Seeded random source used by the dataset generator and the property
// suites. mt19937_64 output is fully pinned by the standard, and the bounded
// draws below use plain modulo reduction, so the same seed yields the same
// stream on every platform. std::uniform_int_distribution is deliberately
// avoided: its mapping is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform-ish draw in [0, n); n = 0 returns 0.
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }

  // Uniform-ish draw in [lo, hi], inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    if (hi <= lo) return lo;
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace medr
