#pragma once

#include <cstdint>
#include <vector>

#include "csets/dyadic.hpp"

namespace csets::test {

/// Deterministic generator for property tests (splitmix64).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // uniform in [0, m)
  std::uint64_t below(std::uint64_t m) { return next() % m; }
  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  Dyadic dyadic(long num_mag, long max_exp) {
    long num = range(-num_mag, num_mag);
    long e = range(0, max_exp);
    return Dyadic::make(num, e);
  }
  DyadicPoint point(int dim, long num_mag, long max_exp) {
    std::vector<Dyadic> c(dim);
    for (int i = 0; i < dim; ++i) c[i] = dyadic(num_mag, max_exp);
    return DyadicPoint(std::move(c));
  }

 private:
  std::uint64_t state_;
};

}  // namespace csets::test
