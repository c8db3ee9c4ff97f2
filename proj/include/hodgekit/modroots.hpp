#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include <hodgekit/common.hpp>
#include <hodgekit/errors.hpp>
#include <hodgekit/ztheory.hpp>

namespace hodgekit {

// Deterministic Miller-Rabin, valid for all n < 3.3e24 with this base set.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  using u128 = unsigned __int128;
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = 1, base = a % n, e = d;
    while (e) {
      if (e & 1) x = std::uint64_t(u128(x) * base % n);
      base = std::uint64_t(u128(base) * base % n);
      e >>= 1;
    }
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 0; i < s - 1; ++i) {
      x = std::uint64_t(u128(x) * x % n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// Prime field F_p for p < 2^32, with a precomputed Barrett constant so the
// innermost loops avoid hardware division: products of two reduced elements
// fit in 64 bits and reduce with two multiplies.
class Fp {
 public:
  explicit Fp(std::uint64_t p) : p_(p), barrett_(~std::uint64_t(0) / p) {
    if (p < 2 || p >= (std::uint64_t(1) << 32))
      throw invalid_modulus_error("field modulus out of range");
  }

  std::uint64_t modulus() const { return p_; }

  std::uint64_t reduce(std::uint64_t x) const {
    using u128 = unsigned __int128;
    std::uint64_t q = std::uint64_t((u128(x) * barrett_) >> 64);
    std::uint64_t r = x - q * p_;
    while (r >= p_) r -= p_;
    return r;
  }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t r = a + b;
    return r >= p_ ? r - p_ : r;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint64_t neg(std::uint64_t a) const { return a ? p_ - a : 0; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return reduce(a * b);
  }

  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    a %= p_;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  std::uint64_t inv(std::uint64_t a) const { return pow(a, p_ - 2); }

  // Map an arbitrary signed value into the field.
  std::uint64_t from_int(std::int64_t v) const {
    std::int64_t r = v % std::int64_t(p_);
    return std::uint64_t(r < 0 ? r + std::int64_t(p_) : r);
  }

  friend bool operator==(const Fp&, const Fp&) = default;

 private:
  std::uint64_t p_;
  std::uint64_t barrett_;
};

// Batch inversion (Montgomery's trick): one field inversion for the lot.
// Zero entries are not allowed.
inline void batch_invert(const Fp& f, std::vector<std::uint64_t>& v) {
  if (v.empty()) return;
  std::vector<std::uint64_t> prefix(v.size());
  std::uint64_t acc = 1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    prefix[i] = acc;
    acc = f.mul(acc, v[i]);
  }
  std::uint64_t inv = f.inv(acc);
  for (std::size_t i = v.size(); i-- > 0;) {
    std::uint64_t vi = v[i];
    v[i] = f.mul(inv, prefix[i]);
    inv = f.mul(inv, vi);
  }
}

// Evaluation context for q-th roots of unity in a prime field:
// p == 1 (mod q), and w has multiplicative order exactly q.
class RootContext {
 public:
  static constexpr std::uint64_t kDefaultFloor = std::uint64_t(1) << 31;

  // Deterministic: the index-th smallest prime p == 1 (mod q) above `floor`,
  // with w = g^((p-1)/q) for the smallest g passing the exact-order test.
  static RootContext make(std::int64_t q, int index = 0,
                          std::uint64_t floor = kDefaultFloor) {
    if (q < 1) throw invalid_modulus_error("q must be >= 1");
    std::uint64_t uq = std::uint64_t(q);
    std::uint64_t p = floor + 1;
    p += (uq - (p - 1) % uq) % uq;  // first candidate == 1 (mod q)
    int found = 0;
    for (std::int64_t iter = 0; iter < (std::int64_t(1) << 40) / q + 4096;
         ++iter, p += uq) {
      if (!is_prime_u64(p)) continue;
      if (found++ == index) {
        Fp field(p);
        auto primes = factorize(q);
        for (std::uint64_t g = 2; g < 100000; ++g) {
          std::uint64_t w = field.pow(g, (p - 1) / uq);
          bool exact = true;
          for (auto [ell, e] : primes) {
            if (field.pow(w, uq / std::uint64_t(ell)) == 1) {
              exact = false;
              break;
            }
          }
          if (exact) return RootContext(field, q, w, index);
        }
        throw exhaustion_error("no element of exact order found");
      }
    }
    throw exhaustion_error("prime search exhausted");
  }

  const Fp& field() const { return field_; }
  std::uint64_t prime() const { return field_.modulus(); }
  std::int64_t order() const { return q_; }
  std::uint64_t root() const { return w_; }
  int index() const { return index_; }

  // w^e for arbitrary signed e.
  std::uint64_t root_pow(std::int64_t e) const {
    return field_.pow(w_, std::uint64_t(mod_norm(e, q_)));
  }

  // Re-checkable construction invariant.
  bool root_has_exact_order() const {
    if (field_.pow(w_, std::uint64_t(q_)) != 1) return false;
    for (auto [ell, e] : factorize(q_))
      if (field_.pow(w_, std::uint64_t(q_ / ell)) == 1) return false;
    return true;
  }

 private:
  RootContext(Fp f, std::int64_t q, std::uint64_t w, int index)
      : field_(f), q_(q), w_(w), index_(index) {}

  Fp field_;
  std::int64_t q_;
  std::uint64_t w_;
  int index_;
};

// Deterministic CRT: the unique x with |x| <= bound and x == r_i (mod p_i).
// Requires the prime product to exceed 2*bound; anything else is reported,
// never silently truncated.
inline Int crt_reconstruct(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& residues,
    const Int& bound) {
  if (residues.empty()) throw precision_error("no residues given");
  Int M = 1;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    for (std::size_t j = i + 1; j < residues.size(); ++j)
      if (residues[i].second == residues[j].second)
        throw precision_error("repeated CRT prime");
    M *= residues[i].second;
  }
  if (M <= 2 * bound)
    throw precision_error("prime product does not cover the bound");
  Int x = 0;
  for (auto [r, p] : residues) {
    Int Mi = M / p;
    std::int64_t mi = std::int64_t(Mi % p);
    std::int64_t ci = mod_inverse(mi, std::int64_t(p));
    x += Int(r) * ci % Int(p) * Mi;
  }
  x %= M;
  if (x * 2 > M) x -= M;
  if (abs(x) > bound)
    throw inconsistency_error("residues do not lift to a bounded integer");
  return x;
}

}  // namespace hodgekit
