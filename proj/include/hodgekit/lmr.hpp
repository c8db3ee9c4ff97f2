#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <hodgekit/errors.hpp>
#include <hodgekit/lens.hpp>
#include <hodgekit/ztheory.hpp>

namespace hodgekit {

// The data (r, t, a) of the LMR construction. Entries of a are kept as
// given; all predicates compare them mod r (or mod divisors of r).
struct AVector {
  std::int64_t r;
  std::int64_t t;
  std::vector<std::int64_t> a;

  AVector(std::int64_t r_, std::int64_t t_, std::vector<std::int64_t> a_)
      : r(r_), t(t_), a(std::move(a_)) {
    if (r <= 2) throw std::invalid_argument("r must be > 2");
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    if (a.empty()) throw std::invalid_argument("a must be non-empty");
  }

  std::int64_t q() const { return r * r * t; }
  int m() const { return int(a.size()); }

  AVector negated() const {
    std::vector<std::int64_t> na(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) na[i] = -a[i];
    return AVector(r, t, std::move(na));
  }

  friend bool operator==(const AVector&, const AVector&) = default;
};

// LMR(r,t,a) = L±(r^2 t, rta + 1).
inline PlusMinusLens lmr_build(const AVector& v) {
  std::vector<std::int64_t> s(v.a.size());
  for (std::size_t i = 0; i < v.a.size(); ++i)
    s[i] = mod_norm(v.r * v.t * v.a[i] + 1, v.q());
  return PlusMinusLens(v.q(), std::move(s));
}

inline std::pair<PlusMinusLens, PlusMinusLens> lmr_pair(const AVector& v) {
  return {lmr_build(v), lmr_build(v.negated())};
}

// Executable sanity proof of what makes the construction tick:
// (rtc+1)(rtd+1) == rt(c+d)+1 (mod r^2 t) for all c,d, and the subgroup
// {rtc+1} is cyclic of order r generated by rt+1.
inline bool magic_check(std::int64_t r, std::int64_t t) {
  if (r < 1 || t < 1) throw std::invalid_argument("r, t must be >= 1");
  const std::int64_t q = r * r * t;
  using u128 = unsigned __int128;
  for (std::int64_t c = 0; c < r; ++c)
    for (std::int64_t d = 0; d < r; ++d) {
      std::uint64_t lhs = std::uint64_t(
          u128(mod_norm(r * t * c + 1, q)) * u128(mod_norm(r * t * d + 1, q)) % u128(q));
      if (std::int64_t(lhs) != mod_norm(r * t * (c + d) + 1, q)) return false;
    }
  std::int64_t gen = mod_norm(r * t + 1, q), pw = mod_norm(1, q);
  for (std::int64_t k = 0; k < r; ++k) {
    if (pw != mod_norm(r * t * k + 1, q)) return false;
    pw = std::int64_t(u128(pw) * u128(gen) % u128(q));
  }
  return pw == mod_norm(1, q);  // period exactly r
}

// Smallest c in Z_r with multiset(a + c) == multiset(b) mod r, if any.
inline std::optional<std::int64_t> eqmd(std::span<const std::int64_t> a,
                                        std::span<const std::int64_t> b,
                                        std::int64_t r) {
  if (r < 1) throw invalid_modulus_error("r must be >= 1");
  if (a.size() != b.size()) throw std::invalid_argument("length mismatch");
  std::vector<std::int64_t> bs(b.size()), as(a.size());
  for (std::size_t i = 0; i < b.size(); ++i) bs[i] = mod_norm(b[i], r);
  std::sort(bs.begin(), bs.end());
  for (std::int64_t c = 0; c < r; ++c) {
    for (std::size_t i = 0; i < a.size(); ++i) as[i] = mod_norm(a[i] + c, r);
    std::sort(as.begin(), as.end());
    if (as == bs) return c;
  }
  return std::nullopt;
}

struct DivisorStatus {
  std::int64_t d;
  bool univalent;
  bool reversible;
  bool good;
  bool auto_pass;  // d <= 2, good without checking
};

struct Classification {
  std::int64_t r;
  bool univalent = false;
  bool reversible = false;
  bool good = false;
  bool hereditarily_good = false;
  bool useful = false;
  std::optional<std::int64_t> reversing_constant;
  std::optional<std::int64_t> failing_divisor;
  std::vector<DivisorStatus> divisor_status;
};

namespace detail {

inline bool univalent_mod(std::span<const std::int64_t> a, std::int64_t d) {
  std::vector<std::int64_t> v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v[i] = mod_norm(a[i], d);
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

}  // namespace detail

// The section-6 predicates. Hereditary goodness checks every divisor of r;
// divisors 1 and 2 pass automatically (any a is reversible there).
inline Classification classify(std::span<const std::int64_t> a, std::int64_t r) {
  if (r < 1) throw invalid_modulus_error("r must be >= 1");
  Classification c;
  c.r = r;
  std::vector<std::int64_t> neg(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) neg[i] = -a[i];

  c.univalent = detail::univalent_mod(a, r);
  c.reversing_constant = eqmd(a, neg, r);
  c.reversible = c.reversing_constant.has_value();
  c.good = c.univalent || c.reversible;

  c.hereditarily_good = true;
  for (std::int64_t d : divisors(r)) {
    DivisorStatus st{d, false, false, true, d <= 2};
    if (d > 2) {
      st.univalent = detail::univalent_mod(a, d);
      st.reversible = eqmd(a, neg, d).has_value();
      st.good = st.univalent || st.reversible;
      if (!st.good && c.hereditarily_good) {
        c.hereditarily_good = false;
        c.failing_divisor = d;
      }
    }
    c.divisor_status.push_back(st);
  }
  c.useful = c.hereditarily_good && !c.reversible;
  return c;
}

inline Classification classify(const std::vector<std::int64_t>& a, std::int64_t r) {
  return classify(std::span<const std::int64_t>(a), r);
}

struct TheoremCheck {
  Classification classification;
  bool hodge_equal = false;
  bool conjugate = false;
};

// Runs the Theorem-1 battery on the pair (LMR(r,t,a), LMR(r,t,-a)). A
// hereditarily good vector whose pair fails Hodge equality would falsify
// the theorem (or expose an engine bug) and is surfaced loudly.
inline TheoremCheck theorem_check(const AVector& v) {
  TheoremCheck out;
  out.classification = classify(v.a, v.r);
  auto [g1, g2] = lmr_pair(v);
  out.hodge_equal = hodge_equal(g1, g2);
  out.conjugate = conjugate(g1, g2);
  if (out.classification.hereditarily_good && !out.hodge_equal)
    throw theorem_counterexample_error("hereditarily good vector with unequal series");
  return out;
}

// All (r,t) with r > 2, t >= 1, r^2 t <= qmax and a useful mod r,
// ascending by (r^2 t, r).
inline std::vector<AVector> enumerate_lmr(std::span<const std::int64_t> a,
                                          std::int64_t qmax) {
  if (qmax < 1) throw std::invalid_argument("qmax must be >= 1");
  std::vector<AVector> out;
  std::vector<std::int64_t> av(a.begin(), a.end());
  for (std::int64_t r = 3; r * r <= qmax; ++r) {
    if (!classify(a, r).useful) continue;
    for (std::int64_t t = 1; r * r * t <= qmax; ++t) out.emplace_back(r, t, av);
  }
  std::stable_sort(out.begin(), out.end(), [](const AVector& x, const AVector& y) {
    return x.q() != y.q() ? x.q() < y.q() : x.r < y.r;
  });
  return out;
}

inline std::vector<AVector> enumerate_lmr(const std::vector<std::int64_t>& a,
                                          std::int64_t qmax) {
  return enumerate_lmr(std::span<const std::int64_t>(a), qmax);
}

}  // namespace hodgekit
