#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace sdfnav {

// splitmix64 finalizer, used for seed derivation.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ mix64(b));
}

// Deterministic RNG. mt19937_64 output is pinned by the standard and the
// mappings below avoid the implementation-defined std:: distributions, so
// streams are reproducible across compilers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(mix64(seed)) {}

  std::uint64_t next_u64() { return eng_(); }

  // [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // [0, n)
  int uniform_int(int n) {
    return n <= 1 ? 0 : static_cast<int>(uniform() * n) % n;
  }

  double normal() {
    // Box-Muller, no caching so call order maps 2 uniforms -> 1 sample.
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  Rng split(std::uint64_t stream) { return Rng(mix64(next_u64(), stream)); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace sdfnav
