#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include <hodgekit/errors.hpp>

namespace hodgekit {

// Normalize a to [0, q).
inline std::int64_t mod_norm(std::int64_t a, std::int64_t q) {
  if (q < 1) throw invalid_modulus_error("modulus must be >= 1");
  std::int64_t r = a % q;
  return r < 0 ? r + q : r;
}

// An element of Z_q, always stored normalized to [0, q).
struct Residue {
  std::int64_t value;
  std::int64_t modulus;

  Residue(std::int64_t v, std::int64_t q) : value(mod_norm(v, q)), modulus(q) {}

  friend bool operator==(const Residue&, const Residue&) = default;
};

// Extended Euclid: returns g = gcd(a,b) and x,y with a x + b y = g.
inline std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x,
                            std::int64_t& y) {
  x = 1;
  y = 0;
  std::int64_t x1 = 0, y1 = 1;
  while (b != 0) {
    std::int64_t t = a / b;
    a -= t * b;
    std::swap(a, b);
    x -= t * x1;
    std::swap(x, x1);
    y -= t * y1;
    std::swap(y, y1);
  }
  return a;
}

// Inverse of b in Z_q; throws not_invertible_error when gcd(b, q) != 1.
// q = 1 is the trivial ring, where 0 is its own inverse.
inline std::int64_t mod_inverse(std::int64_t b, std::int64_t q) {
  b = mod_norm(b, q);
  if (q == 1) return 0;
  std::int64_t x, y;
  if (ext_gcd(b, q, x, y) != 1)
    throw not_invertible_error(std::to_string(b) + " is not a unit mod " +
                               std::to_string(q));
  return mod_norm(x, q);
}

// The quotient a / b in Z_q: the c with c*b == a (mod q).
inline std::int64_t mod_quot(std::int64_t a, std::int64_t b, std::int64_t q) {
  std::int64_t r = mod_norm(a, q);
  using u128 = unsigned __int128;
  return static_cast<std::int64_t>(u128(r) * u128(mod_inverse(b, q)) % u128(q));
}

inline Residue mod_quot(const Residue& a, const Residue& b) {
  if (a.modulus != b.modulus)
    throw modulus_mismatch_error("residues over different moduli");
  return Residue(mod_quot(a.value, b.value, a.modulus), a.modulus);
}

// Z*_q as an ascending list, with the paper's convention Z*_1 = {0}.
inline std::vector<Residue> unit_group(std::int64_t q) {
  if (q < 1) throw invalid_modulus_error("modulus must be >= 1");
  std::vector<Residue> out;
  if (q == 1) {
    out.emplace_back(0, 1);
    return out;
  }
  for (std::int64_t v = 1; v < q; ++v)
    if (std::gcd(v, q) == 1) out.emplace_back(v, q);
  return out;
}

// All divisors of q, ascending.
inline std::vector<std::int64_t> divisors(std::int64_t q) {
  if (q < 1) throw invalid_modulus_error("q must be >= 1");
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= q; ++d) {
    if (q % d == 0) {
      small.push_back(d);
      if (d != q / d) large.push_back(q / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// d' = d/gcd(d, beta), so that d | beta*gamma <=> d' | gamma.
inline std::int64_t reduce_dprime(std::int64_t d, std::int64_t beta) {
  if (d < 1) throw invalid_modulus_error("d must be >= 1");
  std::int64_t g = std::gcd(d, beta < 0 ? -beta : beta);
  return d / g;
}

// Prime factorization by trial division, (prime, exponent) pairs ascending.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::int64_t euler_phi(std::int64_t n) {
  std::int64_t r = n;
  for (auto [p, e] : factorize(n)) r -= r / p;
  return r;
}

}  // namespace hodgekit
