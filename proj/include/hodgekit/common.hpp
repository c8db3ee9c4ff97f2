#pragma once

#include <cstdint>
#include <boost/multiprecision/cpp_int.hpp>

namespace hodgekit {

// Exact arbitrary-precision integer used for table entries, cyclotomic
// coefficients and polynomial coefficients.
using Int = boost::multiprecision::cpp_int;

// Binomial coefficient C(n, k) as an exact integer; 0 for k < 0 or k > n.
inline Int binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n || n < 0) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a, the hash used for search fingerprints.
inline std::uint64_t fnv1a_init() { return 0xcbf29ce484222325ULL; }
inline std::uint64_t fnv1a_step(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline constexpr std::uint64_t kDefaultSeed = 0x686f646765ULL;

}  // namespace hodgekit
