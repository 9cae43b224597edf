#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ffcube {

// Deterministic RNG for trials. mt19937_64 raw output is pinned by the
// standard; bounded sampling is hand-rolled (rejection) so streams never
// depend on library-specific distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t lim = ~0ull - ~0ull % n;
    std::uint64_t r;
    do { r = eng_(); } while (r >= lim);
    return r % n;
  }

  // uniform in [lo, hi] inclusive
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return eng_() & 1; }

 private:
  std::mt19937_64 eng_;
};

// Stable seed mixing so per-trial streams are independent of threading and
// iteration order (splitmix64 finalizer over the folded words).
inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (std::uint64_t v : parts) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    std::uint64_t z = h;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    h = z ^ (z >> 31);
  }
  return h;
}

}  // namespace ffcube
