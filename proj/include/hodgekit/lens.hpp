#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include <hodgekit/errors.hpp>
#include <hodgekit/hodge.hpp>
#include <hodgekit/ztheory.hpp>

namespace hodgekit {

// The cyclic diagonal group L(q,s) = <diag(omega_q^s)>. Exponents have
// multiset semantics and are stored sorted and normalized to [0,q).
class LensGroup {
 public:
  LensGroup(std::int64_t q, std::vector<std::int64_t> s) : q_(q), s_(std::move(s)) {
    if (q_ < 1) throw invalid_modulus_error("q must be >= 1");
    if (s_.empty()) throw std::invalid_argument("empty exponent vector");
    for (auto& v : s_) v = mod_norm(v, q_);
    std::sort(s_.begin(), s_.end());
    content_ = q_;
    for (auto v : s_) content_ = std::gcd(content_, v);
    if (content_ == 0) content_ = q_;  // q = 1 boundary: gcd convention
  }

  std::int64_t q() const { return q_; }
  int n() const { return int(s_.size()); }
  const std::vector<std::int64_t>& s() const { return s_; }
  // gcd(q, s_1, ..., s_n); the group has order q just if this is 1
  std::int64_t content() const { return q_ == 1 ? 1 : content_; }

  friend bool operator==(const LensGroup&, const LensGroup&) = default;

 private:
  std::int64_t q_;
  std::vector<std::int64_t> s_;
  std::int64_t content_;
};

// L±(q,s) = L(q, dub(s)) with dub(s) = (s_1, -s_1, ..., s_m, -s_m):
// the diagonal model of the real rotation block group on s.
class PlusMinusLens {
 public:
  PlusMinusLens(std::int64_t q, std::vector<std::int64_t> s) : q_(q), s_(std::move(s)) {
    if (q_ < 1) throw invalid_modulus_error("q must be >= 1");
    if (s_.empty()) throw std::invalid_argument("empty exponent vector");
    for (auto& v : s_) v = mod_norm(v, q_);
    std::sort(s_.begin(), s_.end());
  }

  std::int64_t q() const { return q_; }
  int m() const { return int(s_.size()); }
  const std::vector<std::int64_t>& s() const { return s_; }

  LensGroup dubbed() const {
    std::vector<std::int64_t> d;
    d.reserve(s_.size() * 2);
    for (auto v : s_) {
      d.push_back(v);
      d.push_back(mod_norm(-v, q_));
    }
    return LensGroup(q_, std::move(d));
  }

  friend bool operator==(const PlusMinusLens&, const PlusMinusLens&) = default;

 private:
  std::int64_t q_;
  std::vector<std::int64_t> s_;
};

// {diag(omega_q^{ks}) : k in Z_q} as a spectral presentation of order q.
// Requires a faithful presentation (content 1) so the element list is the
// group itself rather than a covering multiset.
inline SpectralGroup to_spectral(const LensGroup& L) {
  if (L.content() != 1)
    throw non_faithful_error("gcd(q, s) != 1: reduce q first");
  std::vector<SpectralGroup::Element> els;
  els.reserve((L.q()));
  for (std::int64_t k = 0; k < L.q(); ++k) {
    SpectralGroup::Element el;
    el.exps.reserve((L.n()));
    for (auto si : L.s()) el.exps.push_back(mod_norm(k * si, L.q()));
    els.push_back(std::move(el));
  }
  return SpectralGroup(L.q(), std::move(els));
}

inline SpectralGroup to_spectral(const PlusMinusLens& L) {
  return to_spectral(L.dubbed());
}

// Smallest unit u in Z*_q with u*s1 == s2 as multisets mod q, if any.
inline std::optional<std::int64_t> conjugating_unit(const LensGroup& L1,
                                                    const LensGroup& L2) {
  if (L1.q() != L2.q() || L1.n() != L2.n()) return std::nullopt;
  const std::int64_t q = L1.q();
  std::vector<std::int64_t> mapped(L1.s().size());
  for (const Residue& u : unit_group(q)) {
    std::int64_t uu = q == 1 ? 1 : u.value;
    for (std::size_t i = 0; i < mapped.size(); ++i)
      mapped[i] = mod_norm(uu * L1.s()[i], q);
    std::sort(mapped.begin(), mapped.end());
    if (mapped == L2.s()) return q == 1 ? 0 : u.value;
  }
  return std::nullopt;
}

inline bool conjugate(const LensGroup& L1, const LensGroup& L2) {
  return conjugating_unit(L1, L2).has_value();
}

inline std::optional<std::int64_t> conjugating_unit(const PlusMinusLens& L1,
                                                    const PlusMinusLens& L2) {
  return conjugating_unit(L1.dubbed(), L2.dubbed());
}

inline bool conjugate(const PlusMinusLens& L1, const PlusMinusLens& L2) {
  return conjugate(L1.dubbed(), L2.dubbed());
}

namespace detail {

// Lex-least sorted tuple of folded images u*s_i |-> min(v, q-v) over all
// units u. A complete conjugacy-class invariant for plus-minus groups.
inline std::vector<std::int64_t> fold_canonical(std::int64_t q,
                                                std::span<const std::int64_t> s) {
  std::vector<std::int64_t> best, cur(s.size());
  for (const Residue& u : unit_group(q)) {
    std::int64_t uu = q == 1 ? 1 : u.value;
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::int64_t v = mod_norm(uu * s[i], q);
      cur[i] = std::min(v, q - v);
    }
    std::sort(cur.begin(), cur.end());
    if (best.empty() || cur < best) best = cur;
  }
  return best;
}

}  // namespace detail

// Canonical form of a plus-minus lens group; constant on conjugacy classes,
// and two groups are conjugate just if their canonical forms agree.
inline std::vector<std::int64_t> canonical_form(const PlusMinusLens& L) {
  for (auto v : L.s())
    if (std::gcd(v, L.q()) != 1)
      throw not_a_lens_error("entry " + std::to_string(v) + " is not a unit mod " +
                             std::to_string(L.q()));
  return detail::fold_canonical(L.q(), L.s());
}

// Same recipe without folding: class invariant for general lens groups.
inline std::vector<std::int64_t> canonical_form(const LensGroup& L) {
  std::vector<std::int64_t> best, cur(L.s().size());
  for (const Residue& u : unit_group(L.q())) {
    std::int64_t uu = L.q() == 1 ? 1 : u.value;
    for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = mod_norm(uu * L.s()[i], L.q());
    std::sort(cur.begin(), cur.end());
    if (best.empty() || cur < best) best = cur;
  }
  return best;
}

// No g != 1 has eigenvalue 1: k s_i != 0 (mod q) for every k != 0, which
// amounts to every entry being a unit.
inline bool fixed_point_free(const LensGroup& L) {
  for (auto v : L.s())
    if (std::gcd(v, L.q()) != 1) return false;
  return true;
}

inline bool fixed_point_free(const PlusMinusLens& L) {
  return fixed_point_free(L.dubbed());
}

inline bool hodge_equal(const LensGroup& L1, const LensGroup& L2) {
  return hodge_equal(to_spectral(L1), to_spectral(L2));
}

inline bool hodge_equal(const PlusMinusLens& L1, const PlusMinusLens& L2) {
  return hodge_equal(to_spectral(L1), to_spectral(L2));
}

struct EnumerateOptions {
  bool distinct = true;    // pairwise distinct folded entries
  bool units_only = true;  // entries restricted to units (fixed-point free)
};

// One canonical representative per conjugacy class of L±(q,s), emitted in
// lexicographic order of the canonical form. With units_only = false the
// entries range over all nonzero folded residues with gcd(q, s) = 1.
inline std::vector<std::vector<std::int64_t>> enumerate_pm(
    std::int64_t q, int m, EnumerateOptions opt = {}) {
  if (q < 1) throw invalid_modulus_error("q must be >= 1");
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  std::vector<std::int64_t> pool;
  if (opt.units_only) {
    for (const Residue& u : unit_group(q)) {
      std::int64_t v = u.value;
      std::int64_t folded = std::min(v, q - v);
      if (q == 1) folded = 0;
      pool.push_back(folded);
    }
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  } else {
    for (std::int64_t v = 1; 2 * v <= q; ++v) pool.push_back(v);
    if (q == 1) pool.push_back(0);
  }

  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> tuple(m);
  auto rec = [&](auto&& self, int pos, std::size_t start) -> void {
    if (pos == m) {
      if (!opt.units_only) {
        std::int64_t g = q;
        for (auto v : tuple) g = std::gcd(g, v);
        if (q > 1 && g != 1) return;
      }
      if (detail::fold_canonical(q, tuple) == tuple) out.push_back(tuple);
      return;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
      tuple[pos] = pool[i];
      self(self, pos + 1, opt.distinct ? i + 1 : i);
    }
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace hodgekit
