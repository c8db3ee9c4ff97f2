#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include <hodgekit/common.hpp>
#include <hodgekit/cyclotomic.hpp>
#include <hodgekit/errors.hpp>
#include <hodgekit/modroots.hpp>
#include <hodgekit/ztheory.hpp>

namespace hodgekit {

// A finite group of diagonalizable matrices presented spectrally: every
// element is recorded by its eigenvalue exponents over a common modulus Q,
// i.e. g has eigenvalues omega_Q^{e_1}, ..., omega_Q^{e_n}. Uniform
// multiset covers of a group (each element repeated the same number of
// times) are accepted, since Molien averaging only sees the distribution.
class SpectralGroup {
 public:
  struct Element {
    std::vector<std::int64_t> exps;
    std::int64_t mult = 1;
  };

  SpectralGroup(std::int64_t Q, std::vector<Element> elements)
      : Q_(Q), elements_(std::move(elements)) {
    if (Q_ < 1) throw invalid_modulus_error("Q must be >= 1");
    if (elements_.empty())
      throw inconsistency_error("a group has at least the identity");
    n_ = int(elements_[0].exps.size());
    if (n_ < 1) throw inconsistency_error("dimension must be >= 1");
    order_ = 0;
    bool identity_seen = false;
    for (auto& el : elements_) {
      if (int(el.exps.size()) != n_)
        throw inconsistency_error("ragged exponent vectors");
      if (el.mult < 1) throw inconsistency_error("multiplicity must be >= 1");
      bool zero = true;
      for (auto& e : el.exps) {
        e = mod_norm(e, Q_);
        if (e != 0) zero = false;
      }
      if (zero) identity_seen = true;
      order_ += el.mult;
    }
    if (!identity_seen)
      throw inconsistency_error("identity element missing from presentation");
  }

  std::int64_t modulus() const { return Q_; }
  int dimension() const { return n_; }
  const Int& order() const { return order_; }
  const std::vector<Element>& elements() const { return elements_; }

  // Same group presented over a larger modulus (Q | newQ).
  SpectralGroup rescaled(std::int64_t newQ) const {
    if (newQ % Q_ != 0)
      throw invalid_modulus_error("rescale target must be a multiple of Q");
    std::int64_t f = newQ / Q_;
    std::vector<Element> els = elements_;
    for (auto& el : els)
      for (auto& e : el.exps) e *= f;
    return SpectralGroup(newQ, std::move(els));
  }

 private:
  std::int64_t Q_;
  int n_;
  std::vector<Element> elements_;
  Int order_;
};

// Exact dimensions P_k^p of invariant p-form spaces with degree-k
// polynomial coefficients, for 0 <= k <= kmax, 0 <= p <= n.
class HodgeTable {
 public:
  HodgeTable(std::int64_t Q, int n, std::int64_t kmax)
      : Q_(Q), n_(n), kmax_(kmax),
        data_((kmax + 1) * (n + 1)) {}

  std::int64_t modulus() const { return Q_; }
  int dimension() const { return n_; }
  std::int64_t kmax() const { return kmax_; }

  Int& at(std::int64_t k, int p) {
    return data_[(k) * (n_ + 1) + (p)];
  }
  const Int& at(std::int64_t k, int p) const {
    return data_[(k) * (n_ + 1) + (p)];
  }

  friend bool operator==(const HodgeTable&, const HodgeTable&) = default;

 private:
  std::int64_t Q_;
  int n_;
  std::int64_t kmax_;
  std::vector<Int> data_;
};

enum class Engine { modular, cyclotomic };

// C(n,p) * C(k+n-1, n-1): the dimension of the ambient space of p-forms
// with degree-k coefficients, a hard upper bound for P_k^p and the CRT
// reconstruction bound of the modular engine.
inline Int ambient_form_dim(int n, int p, std::int64_t k) {
  return binomial(n, p) * binomial(k + n - 1, n - 1);
}

namespace detail {

// Elementary symmetric functions e_0..e_n of the eigenvalues in F_p.
inline std::vector<std::uint64_t> elementary_symmetric(
    const Fp& f, std::span<const std::uint64_t> lam) {
  std::vector<std::uint64_t> sym(lam.size() + 1);
  sym[0] = 1;
  std::size_t used = 0;
  for (std::uint64_t l : lam) {
    ++used;
    for (std::size_t j = used; j > 0; --j)
      sym[j] = f.add(sym[j], f.mul(sym[j - 1], l));
  }
  return sym;
}

// The per-prime Hodge table of G (after division by |G|), entries in F_p.
// Row k, column p layout matches HodgeTable.
inline std::vector<std::uint64_t> residue_table(const SpectralGroup& G,
                                                std::int64_t kmax,
                                                const RootContext& ctx) {
  const Fp& f = ctx.field();
  const std::int64_t Q = G.modulus();
  const int n = G.dimension();
  if (ctx.order() % Q != 0)
    throw invalid_modulus_error("context order not divisible by Q");
  std::vector<std::uint64_t> wpow(Q);
  wpow[0] = 1;
  std::uint64_t wq = ctx.root_pow(ctx.order() / Q);
  for (std::int64_t e = 1; e < Q; ++e) wpow[e] = f.mul(wpow[(e - 1)], wq);

  std::vector<std::uint64_t> acc((kmax + 1) * (n + 1));
  std::vector<std::uint64_t> lam(n), c((kmax + 1));
  for (const auto& el : G.elements()) {
    for (int i = 0; i < n; ++i) lam[i] = wpow[(el.exps[std::size_t(i)])];
    auto sym = elementary_symmetric(f, lam);
    // det(I - x g) = sum_j (-1)^j e_j x^j; the truncated reciprocal series
    // follows the order-n recurrence c_j = -sum_l b_l c_{j-l}.
    std::vector<std::uint64_t> b(sym);
    for (int j = 1; j <= n; j += 2) b[j] = f.neg(b[j]);
    c[0] = 1;
    for (std::int64_t j = 1; j <= kmax; ++j) {
      std::uint64_t s = 0;
      for (int l = 1; l <= std::min<std::int64_t>(n, j); ++l)
        s = f.add(s, f.mul(b[l], c[(j - l)]));
      c[j] = f.neg(s);
    }
    std::uint64_t mult = f.from_int(el.mult);
    for (int p = 0; p <= n; ++p) {
      std::uint64_t t = f.mul(mult, sym[p]);
      if (t == 0) continue;
      std::uint64_t* row = acc.data() + p;
      for (std::int64_t k = 0; k <= kmax; ++k)
        row[(k) * (n + 1)] =
            f.add(row[(k) * (n + 1)], f.mul(t, c[k]));
    }
  }
  std::uint64_t ord = std::uint64_t(G.order() % f.modulus());
  if (ord == 0) throw inconsistency_error("group order divisible by CRT prime");
  std::uint64_t invG = f.inv(ord);
  for (auto& v : acc) v = f.mul(v, invG);
  return acc;
}

// Enough deterministic contexts that the prime product exceeds `need`.
inline std::vector<RootContext> contexts_for(std::int64_t Q, const Int& need) {
  std::vector<RootContext> out;
  Int prod = 1;
  for (int idx = 0; prod <= need; ++idx) {
    out.push_back(RootContext::make(Q, idx));
    prod *= out.back().prime();
  }
  return out;
}

inline HodgeTable cyclotomic_table(const SpectralGroup& G, std::int64_t kmax) {
  const std::int64_t Q = G.modulus();
  const int n = G.dimension();
  std::vector<CycloElem> roots;
  roots.reserve(Q);
  for (std::int64_t e = 0; e < Q; ++e) roots.push_back(CycloElem::root_power(Q, e));

  const CycloElem zero = CycloElem::zero(Q);
  const CycloElem one = CycloElem::integer(Q, 1);
  std::vector<CycloElem> acc((kmax + 1) * (n + 1), zero);
  for (const auto& el : G.elements()) {
    std::vector<CycloElem> sym((n + 1), zero);
    sym[0] = one;
    for (int i = 0; i < n; ++i) {
      const CycloElem& l = roots[(el.exps[std::size_t(i)])];
      for (int j = i + 1; j > 0; --j) sym[j] += sym[(j - 1)] * l;
    }
    std::vector<CycloElem> b = sym;
    for (int j = 1; j <= n; j += 2) b[j] = zero - b[j];
    std::vector<CycloElem> c((kmax + 1), zero);
    c[0] = one;
    for (std::int64_t j = 1; j <= kmax; ++j) {
      CycloElem s = zero;
      for (int l = 1; l <= std::min<std::int64_t>(n, j); ++l)
        s += b[l] * c[(j - l)];
      c[j] = zero - s;
    }
    for (int p = 0; p <= n; ++p) {
      CycloElem t = sym[p];
      t.scale(el.mult);
      if (t.is_zero()) continue;
      for (std::int64_t k = 0; k <= kmax; ++k) {
        acc[(k) * (n + 1) + (p)] += t * c[k];
      }
    }
  }
  HodgeTable table(Q, n, kmax);
  const Int& ord = G.order();
  for (std::int64_t k = 0; k <= kmax; ++k)
    for (int p = 0; p <= n; ++p) {
      Int v = acc[(k) * (n + 1) + (p)].to_integer();
      if (v % ord != 0)
        throw inconsistency_error("group sum not divisible by |G|");
      table.at(k, p) = v / ord;
    }
  return table;
}

}  // namespace detail

// The Hodge (exterior Molien) table of G up to coefficient degree kmax.
inline HodgeTable hodge_table(const SpectralGroup& G, std::int64_t kmax,
                              Engine engine = Engine::modular) {
  if (kmax < 0) throw std::invalid_argument("kmax must be >= 0");
  if (engine == Engine::cyclotomic) return detail::cyclotomic_table(G, kmax);

  const int n = G.dimension();
  Int maxB = ambient_form_dim(n, n / 2, kmax);
  auto ctxs = detail::contexts_for(G.modulus(), 2 * maxB);
  std::vector<std::vector<std::uint64_t>> tables;
  tables.reserve(ctxs.size());
  for (const auto& ctx : ctxs)
    tables.push_back(detail::residue_table(G, kmax, ctx));

  HodgeTable out(G.modulus(), n, kmax);
  Int rowdim = 1;  // C(k+n-1, n-1), updated incrementally over k
  std::vector<std::pair<std::uint64_t, std::uint64_t>> residues(ctxs.size());
  for (std::int64_t k = 0; k <= kmax; ++k) {
    if (k > 0) {
      rowdim *= k + n - 1;
      rowdim /= k;
    }
    for (int p = 0; p <= n; ++p) {
      for (std::size_t i = 0; i < ctxs.size(); ++i)
        residues[i] = {tables[i][(k) * (n + 1) + (p)],
                       ctxs[i].prime()};
      Int v = crt_reconstruct(residues, binomial(n, p) * rowdim);
      if (v < 0) throw inconsistency_error("negative invariant dimension");
      out.at(k, p) = v;
    }
  }
  return out;
}

// Hodge series in rational normal form: numerator coefficients N[k][p] over
// the denominator (1 - x^Q)^n, the leading 1/|G| already divided out. For a
// genuine group the numerator is integral (den() == 1); a residual global
// denominator is kept so that uniform multiset covers that fail integrality
// are reported rather than mangled.
class HodgeNumerator {
 public:
  HodgeNumerator(std::int64_t Q, int n)
      : Q_(Q), n_(n), xdeg_(n * (Q - 1)), den_(1),
        data_((xdeg_ + 1) * (n + 1)) {}

  std::int64_t modulus() const { return Q_; }
  int dimension() const { return n_; }
  std::int64_t xdeg() const { return xdeg_; }
  const Int& den() const { return den_; }
  Int& den() { return den_; }

  Int& at(std::int64_t k, int p) {
    return data_[(k) * (n_ + 1) + (p)];
  }
  const Int& at(std::int64_t k, int p) const {
    return data_[(k) * (n_ + 1) + (p)];
  }

  // Series expansion: must reproduce hodge_table.
  HodgeTable expand(std::int64_t kmax) const {
    HodgeTable t(Q_, n_, kmax);
    for (std::int64_t k = 0; k <= kmax; ++k)
      for (int p = 0; p <= n_; ++p) {
        Int v = 0;
        for (std::int64_t j = 0; j * Q_ <= k; ++j) {
          if (k - j * Q_ > xdeg_) continue;
          v += binomial(n_ - 1 + j, n_ - 1) * at(k - j * Q_, p);
        }
        if (v % den_ != 0)
          throw inconsistency_error("numerator expansion not integral");
        t.at(k, p) = v / den_;
      }
    return t;
  }

  friend bool operator==(const HodgeNumerator&, const HodgeNumerator&) = default;

 private:
  std::int64_t Q_;
  int n_;
  std::int64_t xdeg_;
  Int den_;
  std::vector<Int> data_;
};

namespace detail {

// Numerator residues mod one prime: sum over g of
// mult * prod_i (1 + x omega^{e_i} + ... + x^{Q-1} omega^{(Q-1)e_i})
//      * prod_i (1 + y omega^{e_i}),   divided by |G| in F_p.
inline std::vector<std::uint64_t> numerator_residues(const SpectralGroup& G,
                                                     const RootContext& ctx) {
  const Fp& f = ctx.field();
  const std::int64_t Q = G.modulus();
  const int n = G.dimension();
  const std::int64_t xdeg = std::int64_t(n) * (Q - 1);
  std::vector<std::uint64_t> wpow(Q);
  wpow[0] = 1;
  std::uint64_t wq = ctx.root_pow(ctx.order() / Q);
  for (std::int64_t e = 1; e < Q; ++e) wpow[e] = f.mul(wpow[(e - 1)], wq);

  std::vector<std::uint64_t> acc((xdeg + 1) * (n + 1));
  std::vector<std::uint64_t> lam(n);
  for (const auto& el : G.elements()) {
    for (int i = 0; i < n; ++i) lam[i] = wpow[(el.exps[std::size_t(i)])];
    auto sym = elementary_symmetric(f, lam);
    // product of the n geometric factors (1 - x^Q)/(1 - x omega^{e_i})
    std::vector<std::uint64_t> g{1};
    for (int i = 0; i < n; ++i) {
      std::int64_t e = el.exps[i];
      std::vector<std::uint64_t> next(g.size() + (Q - 1));
      for (std::size_t a = 0; a < g.size(); ++a) {
        if (g[a] == 0) continue;
        for (std::int64_t j = 0; j < Q; ++j) {
          std::uint64_t term = f.mul(g[a], wpow[(e * j % Q)]);
          next[a + (j)] = f.add(next[a + (j)], term);
        }
      }
      g = std::move(next);
    }
    std::uint64_t mult = f.from_int(el.mult);
    for (int p = 0; p <= n; ++p) {
      std::uint64_t t = f.mul(mult, sym[p]);
      if (t == 0) continue;
      for (std::size_t k = 0; k < g.size(); ++k)
        acc[k * (n + 1) + (p)] =
            f.add(acc[k * (n + 1) + (p)], f.mul(t, g[k]));
    }
  }
  std::uint64_t invG = f.inv(std::uint64_t(G.order() % f.modulus()));
  for (auto& v : acc) v = f.mul(v, invG);
  return acc;
}

}  // namespace detail

inline HodgeNumerator hodge_numerator(const SpectralGroup& G,
                                      Engine engine = Engine::modular) {
  const std::int64_t Q = G.modulus();
  const int n = G.dimension();
  HodgeNumerator out(Q, n);

  if (engine == Engine::modular) {
    // |N[k][p]| <= sum_j C(n,j) B(k - jQ, p) <= 2^n B(k,p)
    Int maxB = (Int(1) << n) * ambient_form_dim(n, n / 2, out.xdeg());
    auto ctxs = detail::contexts_for(Q, 2 * maxB);
    std::vector<std::vector<std::uint64_t>> tables;
    for (const auto& ctx : ctxs) tables.push_back(detail::numerator_residues(G, ctx));
    std::vector<std::pair<std::uint64_t, std::uint64_t>> residues(ctxs.size());
    for (std::int64_t k = 0; k <= out.xdeg(); ++k)
      for (int p = 0; p <= n; ++p) {
        for (std::size_t i = 0; i < ctxs.size(); ++i)
          residues[i] = {tables[i][(k) * (n + 1) + (p)],
                         ctxs[i].prime()};
        out.at(k, p) = crt_reconstruct(
            residues, (Int(1) << n) * ambient_form_dim(n, p, k));
      }
    return out;
  }

  // cyclotomic route: exact group sum, then one global division by |G|
  const CycloElem zero = CycloElem::zero(Q);
  const CycloElem one = CycloElem::integer(Q, 1);
  std::vector<CycloElem> roots;
  for (std::int64_t e = 0; e < Q; ++e) roots.push_back(CycloElem::root_power(Q, e));
  std::vector<CycloElem> acc((out.xdeg() + 1) * (n + 1), zero);
  for (const auto& el : G.elements()) {
    std::vector<CycloElem> sym((n + 1), zero);
    sym[0] = one;
    for (int i = 0; i < n; ++i) {
      const CycloElem& l = roots[(el.exps[std::size_t(i)])];
      for (int j = i + 1; j > 0; --j) sym[j] += sym[(j - 1)] * l;
    }
    std::vector<CycloElem> g{one};
    for (int i = 0; i < n; ++i) {
      std::int64_t e = el.exps[i];
      std::vector<CycloElem> next(g.size() + (Q - 1), zero);
      for (std::size_t a = 0; a < g.size(); ++a) {
        if (g[a].is_zero()) continue;
        for (std::int64_t j = 0; j < Q; ++j)
          next[a + (j)] += g[a] * roots[(e * j % Q)];
      }
      g = std::move(next);
    }
    for (int p = 0; p <= n; ++p) {
      CycloElem t = sym[p];
      t.scale(el.mult);
      if (t.is_zero()) continue;
      for (std::size_t k = 0; k < g.size(); ++k)
        acc[k * (n + 1) + (p)] += t * g[k];
    }
  }
  Int g = G.order();
  std::vector<Int> ints(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) {
    ints[i] = acc[i].to_integer();
    g = gcd(g, ints[i]);
  }
  out.den() = G.order() / g;
  for (std::int64_t k = 0; k <= out.xdeg(); ++k)
    for (int p = 0; p <= n; ++p)
      out.at(k, p) = ints[(k) * (n + 1) + (p)] / g;
  return out;
}

// Decide equality of Hodge series. Both series are rational with
// denominator (1 - x^Q)^n over the common modulus Q = lcm(Q_G, Q_H) and
// numerator x-degree <= n(Q-1), so table equality up to kmax = n(Q-1) is
// necessary and sufficient. Comparing per-prime residue tables over a prime
// product exceeding twice the CRT bound is equivalent to comparing the
// reconstructed exact tables.
inline bool hodge_equal(const SpectralGroup& G, const SpectralGroup& H) {
  if (G.dimension() != H.dimension()) return false;
  const int n = G.dimension();
  const std::int64_t Q = std::lcm(G.modulus(), H.modulus());
  const SpectralGroup Gq = G.rescaled(Q);
  const SpectralGroup Hq = H.rescaled(Q);
  const std::int64_t kmax = std::int64_t(n) * (Q - 1);
  Int maxB = ambient_form_dim(n, n / 2, kmax);
  auto ctxs = detail::contexts_for(Q, 2 * maxB);
  for (const auto& ctx : ctxs) {
    if (detail::residue_table(Gq, kmax, ctx) != detail::residue_table(Hq, kmax, ctx))
      return false;
  }
  return true;
}

// H_{q,s}(x,y) = sum_{k in Z_q} prod_i (y - omega^{k s_i})/(x - omega^{k s_i})
// evaluated exactly in the context's prime field.
inline std::uint64_t h_eval(std::int64_t q, std::span<const std::int64_t> s,
                            std::uint64_t x, std::uint64_t y,
                            const RootContext& ctx) {
  if (q < 1) throw invalid_modulus_error("q must be >= 1");
  if (ctx.order() % q != 0)
    throw invalid_modulus_error("context order not divisible by q");
  const Fp& f = ctx.field();
  if (f.pow(x, std::uint64_t(q)) == 1)
    throw pole_error("x is a q-th root of unity");
  std::vector<std::uint64_t> wpow(q);
  wpow[0] = 1;
  std::uint64_t wq = ctx.root_pow(ctx.order() / q);
  for (std::int64_t e = 1; e < q; ++e) wpow[e] = f.mul(wpow[(e - 1)], wq);
  std::vector<std::uint64_t> invden(q);
  for (std::int64_t e = 0; e < q; ++e) invden[e] = f.sub(x, wpow[e]);
  batch_invert(f, invden);
  std::uint64_t total = 0;
  for (std::int64_t k = 0; k < q; ++k) {
    std::uint64_t term = 1;
    for (std::int64_t si : s) {
      std::int64_t e = mod_norm(k * mod_norm(si, q), q);
      term = f.mul(term, f.mul(f.sub(y, wpow[e]), invden[e]));
    }
    total = f.add(total, term);
  }
  return total;
}

// H*_{d,s}: the piece of H with k restricted to Z*_d (gcd stratum), with
// the convention Z*_1 = {0}.
inline std::uint64_t hstar_eval(std::int64_t d, std::span<const std::int64_t> s,
                                std::uint64_t x, std::uint64_t y,
                                const RootContext& ctx) {
  if (d < 1) throw invalid_modulus_error("d must be >= 1");
  if (ctx.order() % d != 0)
    throw invalid_modulus_error("context order not divisible by d");
  const Fp& f = ctx.field();
  if (f.pow(x, std::uint64_t(d)) == 1)
    throw pole_error("x is a d-th root of unity");
  std::vector<std::uint64_t> wpow(d);
  wpow[0] = 1;
  std::uint64_t wd = ctx.root_pow(ctx.order() / d);
  for (std::int64_t e = 1; e < d; ++e) wpow[e] = f.mul(wpow[(e - 1)], wd);
  std::vector<std::uint64_t> invden(d);
  for (std::int64_t e = 0; e < d; ++e) invden[e] = f.sub(x, wpow[e]);
  batch_invert(f, invden);
  std::uint64_t total = 0;
  for (std::int64_t k = 0; k < d; ++k) {
    if (d > 1 ? std::gcd(k, d) != 1 : k != 0) continue;
    std::uint64_t term = 1;
    for (std::int64_t si : s) {
      std::int64_t e = mod_norm(k * mod_norm(si, d), d);
      term = f.mul(term, f.mul(f.sub(y, wpow[e]), invden[e]));
    }
    total = f.add(total, term);
  }
  return total;
}

}  // namespace hodgekit
