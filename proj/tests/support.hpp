#pragma once

// Deterministic input generators for property tests.

#include <cstdint>

#include "cbv/exact.hpp"

namespace cbv::testing {

/// splitmix64; fixed seeds keep every run reproducible.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : s_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [lo, hi].
  long range(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }

  BigRational rational(long max_num, long max_den) {
    return make_rational(range(-max_num, max_num), range(1, max_den));
  }

  /// p/q strictly inside (lo, hi), denominator at most max_den.
  BigRational rational_in(const BigRational& lo, const BigRational& hi, long max_den) {
    for (;;) {
      const long q = range(2, max_den);
      const BigRational span = (hi - lo) * q;
      const long width = static_cast<long>(mpz_class(span.get_num() / span.get_den()).get_si());
      if (width < 2) continue;
      const BigRational lo_q = lo * q;
      const long start = static_cast<long>(mpz_class(lo_q.get_num() / lo_q.get_den()).get_si());
      const BigRational x = make_rational(start + range(1, width), q);
      if (x > lo && x < hi) return x;
    }
  }

  SurdQ5 surd(long max_num, long max_den) { return {rational(max_num, max_den), rational(max_num, max_den)}; }

 private:
  std::uint64_t s_;
};

}  // namespace cbv::testing
