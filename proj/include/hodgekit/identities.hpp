#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include <hodgekit/common.hpp>
#include <hodgekit/hodge.hpp>
#include <hodgekit/lmr.hpp>
#include <hodgekit/modroots.hpp>
#include <hodgekit/multipoly.hpp>
#include <hodgekit/ztheory.hpp>

namespace hodgekit {

enum class VerifyMode { symbolic, randomized };

namespace detail {

// Variables of the main identity: x_1..x_m, then u, then v.
inline std::vector<std::string> main_names(int m) {
  std::vector<std::string> names;
  for (int i = 1; i <= m; ++i) names.push_back("x" + std::to_string(i));
  names.push_back("u");
  names.push_back("v");
  return names;
}

// (x_i u - x_j)
inline MultiPoly f_num1(int nv, int i, int j) {
  MultiPoly p = MultiPoly::variable(nv, i) * MultiPoly::variable(nv, nv - 2);
  return p - MultiPoly::variable(nv, j);
}
// (x_j u - x_i v)
inline MultiPoly f_num2(int nv, int i, int j) {
  MultiPoly p = MultiPoly::variable(nv, j) * MultiPoly::variable(nv, nv - 2);
  return p - MultiPoly::variable(nv, i) * MultiPoly::variable(nv, nv - 1);
}
// (x_i - x_j)
inline MultiPoly f_den1(int nv, int i, int j) {
  return MultiPoly::variable(nv, i) - MultiPoly::variable(nv, j);
}
// (x_j - x_i v)
inline MultiPoly f_den2(int nv, int i, int j) {
  return MultiPoly::variable(nv, j) -
         MultiPoly::variable(nv, i) * MultiPoly::variable(nv, nv - 1);
}

struct ClearedMain {
  MultiPoly numF;
  MultiPoly numG;
  MultiPoly den;  // shared: the product of all (x_i - x_j)(x_j - x_i v)
};

// Bring F = sum_i prod_{j != i} (x_i u - x_j)(x_j u - x_i v) /
//                               ((x_i - x_j)(x_j - x_i v))
// and its reciprocal-substituted companion G over the common denominator
// D = prod_{i != j} (x_i - x_j)(x_j - x_i v). Term i of F has denominator
// P_i = prod_{j != i} (x_i - x_j)(x_j - x_i v) and term i of G has
// denominator Q_i (the factors with second index i), so D = prod P_k =
// prod Q_k and the complementary products come from prefix/suffix tables.
inline ClearedMain cleared_main(int m) {
  const int nv = m + 2;
  auto names = main_names(m);
  std::vector<MultiPoly> P, Q;
  for (int k = 0; k < m; ++k) {
    MultiPoly pk = MultiPoly::constant(nv, 1);
    MultiPoly qk = MultiPoly::constant(nv, 1);
    for (int j = 0; j < m; ++j) {
      if (j == k) continue;
      pk *= f_den1(nv, k, j);
      pk *= f_den2(nv, k, j);
      qk *= f_den1(nv, j, k);
      qk *= f_den2(nv, j, k);
    }
    P.push_back(std::move(pk));
    Q.push_back(std::move(qk));
  }
  auto complements = [&](const std::vector<MultiPoly>& v) {
    std::vector<MultiPoly> pre((m) + 1, MultiPoly::constant(nv, 1));
    std::vector<MultiPoly> suf((m) + 1, MultiPoly::constant(nv, 1));
    for (int i = 0; i < m; ++i) pre[(i) + 1] = pre[i] * v[i];
    for (int i = m; i-- > 0;) suf[i] = suf[(i) + 1] * v[i];
    std::vector<MultiPoly> out;
    for (int i = 0; i < m; ++i) out.push_back(pre[i] * suf[(i) + 1]);
    out.push_back(pre[m]);  // full product at the back
    return out;
  };
  auto compP = complements(P);
  auto compQ = complements(Q);

  MultiPoly numF(nv, names), numG(nv, names);
  for (int i = 0; i < m; ++i) {
    MultiPoly nf = MultiPoly::constant(nv, 1);
    MultiPoly ng = MultiPoly::constant(nv, 1);
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      nf *= f_num1(nv, i, j);
      nf *= f_num2(nv, i, j);
      ng *= f_num1(nv, j, i);
      ng *= f_num2(nv, j, i);
    }
    numF += nf * compP[i];
    numG += ng * compQ[i];
  }
  MultiPoly den = compP.back();
  den.set_names(names);
  numF.set_names(names);
  numG.set_names(names);
  return {std::move(numF), std::move(numG), std::move(den)};
}

inline std::uint64_t rng_draw(std::uint64_t& state) {
  state = splitmix64(state);
  return state;
}

inline std::uint64_t rand_field(std::uint64_t& state, const Fp& f) {
  return 2 + rng_draw(state) % (f.modulus() - 3);
}

// Direct F_p evaluation of a main-identity side; reciprocal=false gives F,
// true gives G. Returns false via the ok flag when a denominator vanishes.
inline std::uint64_t eval_main_side(const Fp& f, std::span<const std::uint64_t> xs,
                                    std::uint64_t u, std::uint64_t v,
                                    bool reciprocal, bool& ok) {
  const int m = int(xs.size());
  std::uint64_t total = 0;
  for (int i = 0; i < m; ++i) {
    std::uint64_t num = 1, den = 1;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      std::uint64_t xi = xs[i], xj = xs[j];
      if (reciprocal) std::swap(xi, xj);
      num = f.mul(num, f.sub(f.mul(xi, u), xj));
      num = f.mul(num, f.sub(f.mul(xj, u), f.mul(xi, v)));
      den = f.mul(den, f.sub(xi, xj));
      den = f.mul(den, f.sub(xj, f.mul(xi, v)));
    }
    if (den == 0) {
      ok = false;
      return 0;
    }
    total = f.add(total, f.mul(num, f.inv(den)));
  }
  ok = true;
  return total;
}

}  // namespace detail

// F over the common denominator D (never gcd-normalized).
inline RationalFn build_F(int m) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  auto c = detail::cleared_main(m);
  return RationalFn(std::move(c.numF), std::move(c.den));
}

// G = F(1/x_1, ..., 1/x_m, u, v), cleared over the same denominator.
inline RationalFn build_G(int m) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  auto c = detail::cleared_main(m);
  return RationalFn(std::move(c.numG), std::move(c.den));
}

// Term i of F (or of G, with reciprocal = true) over its own denominator.
inline RationalFn main_identity_term(int m, int i, bool reciprocal = false) {
  const int nv = m + 2;
  auto names = detail::main_names(m);
  MultiPoly num = MultiPoly::constant(nv, 1);
  MultiPoly den = MultiPoly::constant(nv, 1);
  for (int j = 0; j < m; ++j) {
    if (j == i) continue;
    int a = reciprocal ? j : i, b = reciprocal ? i : j;
    num *= detail::f_num1(nv, a, b);
    num *= detail::f_num2(nv, a, b);
    den *= detail::f_den1(nv, a, b);
    den *= detail::f_den2(nv, a, b);
  }
  num.set_names(names);
  den.set_names(names);
  return RationalFn(std::move(num), std::move(den));
}

// The section-9 identity F = G.
inline bool verify_main_identity(int m, VerifyMode mode, int trials = 10,
                                 std::uint64_t seed = kDefaultSeed) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (mode == VerifyMode::symbolic) {
    auto c = detail::cleared_main(m);
    return c.numF == c.numG;
  }
  RootContext ctx = RootContext::make(1, 0);
  const Fp& f = ctx.field();
  std::uint64_t state = seed ^ (std::uint64_t(m) << 32);
  for (int t = 0; t < trials; ++t) {
    std::vector<std::uint64_t> xs(m);
    std::uint64_t u = 0, v = 0, lhs = 0, rhs = 0;
    bool ok = false;
    while (!ok) {
      for (auto& x : xs) x = detail::rand_field(state, f);
      u = detail::rand_field(state, f);
      v = detail::rand_field(state, f);
      lhs = detail::eval_main_side(f, xs, u, v, false, ok);
      if (!ok) continue;
      rhs = detail::eval_main_side(f, xs, u, v, true, ok);
    }
    if (lhs != rhs) return false;
  }
  return true;
}

// The section-10 identity: sum_i prod_{j != i} (x_i u - x_j)/(x_i - x_j)
// equals 1 + u + ... + u^{m-1}. Cleared over V = prod_{i<j} (x_i - x_j),
// where the term-i denominator contributes the sign (-1)^i.
inline bool verify_subsidiary(int m, VerifyMode mode, int trials = 10,
                              std::uint64_t seed = kDefaultSeed) {
  if (m < 0) throw std::invalid_argument("m must be >= 0");
  if (mode == VerifyMode::symbolic) {
    const int nv = m + 1;  // x_1..x_m, u (u last)
    auto vandermonde = [&](int skip) {
      MultiPoly v = MultiPoly::constant(nv, 1);
      for (int a = 0; a < m; ++a) {
        if (a == skip) continue;
        for (int b = a + 1; b < m; ++b) {
          if (b == skip) continue;
          v *= MultiPoly::variable(nv, a) - MultiPoly::variable(nv, b);
        }
      }
      return v;
    };
    MultiPoly lhs(nv);
    for (int i = 0; i < m; ++i) {
      MultiPoly num = MultiPoly::constant(nv, (i % 2 == 0) ? 1 : -1);
      for (int j = 0; j < m; ++j) {
        if (j == i) continue;
        num *= MultiPoly::variable(nv, i) * MultiPoly::variable(nv, m) -
               MultiPoly::variable(nv, j);
      }
      lhs += num * vandermonde(i);
    }
    MultiPoly usum(nv);
    for (int e = 0; e < m; ++e) {
      Monomial mo;
      mo.set(m, std::uint16_t(e));
      usum += MultiPoly::monomial(nv, mo, 1);
    }
    return lhs == usum * vandermonde(-1);
  }
  if (m == 0) return true;  // empty sum on both sides
  RootContext ctx = RootContext::make(1, 0);
  const Fp& f = ctx.field();
  std::uint64_t state = seed ^ (std::uint64_t(m) << 24);
  for (int t = 0; t < trials; ++t) {
    std::vector<std::uint64_t> xs(m);
    std::uint64_t u = 0, lhs = 0;
    bool ok = false;
    while (!ok) {
      ok = true;
      for (auto& x : xs) x = detail::rand_field(state, f);
      u = detail::rand_field(state, f);
      lhs = 0;
      for (int i = 0; i < m && ok; ++i) {
        std::uint64_t num = 1, den = 1;
        for (int j = 0; j < m; ++j) {
          if (j == i) continue;
          num = f.mul(num, f.sub(f.mul(xs[i], u), xs[j]));
          den = f.mul(den, f.sub(xs[i], xs[j]));
        }
        if (den == 0) ok = false;
        else lhs = f.add(lhs, f.mul(num, f.inv(den)));
      }
    }
    std::uint64_t rhs = 0, up = 1;
    for (int e = 0; e < m; ++e) {
      rhs = f.add(rhs, up);
      up = f.mul(up, u);
    }
    if (lhs != rhs) return false;
  }
  return true;
}

// The section-8 partial fraction lemma:
// prod_i 1/(x - l_i) = sum_i 1/(x - l_i) prod_{j != i} 1/(l_i - l_j).
inline bool verify_partial_fraction(int n, VerifyMode mode, int trials = 10,
                                    std::uint64_t seed = kDefaultSeed) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (mode == VerifyMode::symbolic) {
    const int nv = n + 1;  // l_1..l_n, x (x last)
    // cleared over prod_i (x - l_i) * prod_{i != j} (l_i - l_j):
    // LHS becomes W = prod_{i != j} (l_i - l_j); RHS term i keeps
    // prod_{j != i} (x - l_j) and the (l_k - l_j) factors with k != i.
    MultiPoly W = MultiPoly::constant(nv, 1);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        if (k != j) W *= MultiPoly::variable(nv, k) - MultiPoly::variable(nv, j);
    MultiPoly rhs(nv);
    for (int i = 0; i < n; ++i) {
      MultiPoly t = MultiPoly::constant(nv, 1);
      for (int j = 0; j < n; ++j)
        if (j != i) t *= MultiPoly::variable(nv, n) - MultiPoly::variable(nv, j);
      for (int k = 0; k < n; ++k) {
        if (k == i) continue;
        for (int j = 0; j < n; ++j)
          if (j != k) t *= MultiPoly::variable(nv, k) - MultiPoly::variable(nv, j);
      }
      rhs += t;
    }
    return W == rhs;
  }
  RootContext ctx = RootContext::make(1, 0);
  const Fp& f = ctx.field();
  std::uint64_t state = seed ^ (std::uint64_t(n) << 16);
  for (int t = 0; t < trials; ++t) {
    std::vector<std::uint64_t> lam(n);
    std::uint64_t x = 0, lhs = 0, rhs = 0;
    bool ok = false;
    while (!ok) {
      ok = true;
      for (auto& l : lam) l = detail::rand_field(state, f);
      x = detail::rand_field(state, f);
      std::uint64_t den = 1;
      for (int i = 0; i < n; ++i) den = f.mul(den, f.sub(x, lam[i]));
      if (den == 0) {
        ok = false;
        continue;
      }
      lhs = f.inv(den);
      rhs = 0;
      for (int i = 0; i < n && ok; ++i) {
        std::uint64_t d = f.sub(x, lam[i]);
        for (int j = 0; j < n; ++j)
          if (j != i) d = f.mul(d, f.sub(lam[i], lam[j]));
        if (d == 0) ok = false;
        else rhs = f.add(rhs, f.inv(d));
      }
    }
    if (lhs != rhs) return false;
  }
  return true;
}

namespace detail {

// The general-definition Y_{d,s}(x,y,w) of section 8:
// (y-w)/(x-w) * sum_alpha prod_{beta != alpha} (y - w^{s_b/s_a})/(w - w^{s_b/s_a}).
inline std::uint64_t y_general(const Fp& f, std::int64_t d,
                               std::span<const std::int64_t> s, std::uint64_t x,
                               std::uint64_t y, std::uint64_t w) {
  std::uint64_t head = f.mul(f.sub(y, w), f.inv(f.sub(x, w)));
  std::uint64_t total = 0;
  for (std::size_t a = 0; a < s.size(); ++a) {
    std::uint64_t prod = 1;
    for (std::size_t b = 0; b < s.size(); ++b) {
      if (b == a) continue;
      std::int64_t c = mod_quot(s[b], s[a], d);
      std::uint64_t wc = f.pow(w, std::uint64_t(c));
      prod = f.mul(prod, f.mul(f.sub(y, wc), f.inv(f.sub(w, wc))));
    }
    total = f.add(total, prod);
  }
  return f.mul(head, total);
}

}  // namespace detail

// The "magic" substitution of section 8, checked at random points for the
// LMR vector v and a divisor d of r^2 t:
//   (i)  the quotient congruence s_j / s_i == rt(a_j - a_i) + 1 (mod d);
//   (ii) in the univalent case, the regrouped sum over the dubbed entries
//        collapses to F((w^{rt a_1}, ..., w^{rt a_m}), y/w, w^{-2});
//  (iii) H*_{d, dub(s)} == sum over l in Z*_d of Y(x, y, omega_d^l), and
//        the conclusion H*_{d, dub(rta+1)} == H*_{d, dub(-rta+1)}.
// When dub(rta+1) is not univalent mod d, the reversibility branch is
// verified instead: the two dubbed vectors agree as multisets mod d.
inline bool verify_magic_substitution(const AVector& v, std::int64_t d,
                                      const RootContext& ctx, int trials = 10,
                                      std::uint64_t seed = kDefaultSeed) {
  const std::int64_t q = v.q();
  if (d < 1 || q % d != 0) throw std::invalid_argument("d must divide r^2 t");
  if (ctx.order() % d != 0)
    throw invalid_modulus_error("context order not divisible by d");
  const Fp& f = ctx.field();
  const int m = v.m();
  const std::int64_t rt = v.r * v.t;

  std::vector<std::int64_t> sp(m), sn(m);
  for (int i = 0; i < m; ++i) {
    sp[i] = mod_norm(rt * v.a[i] + 1, d);
    sn[i] = mod_norm(-rt * v.a[i] + 1, d);
  }
  auto dub = [&](const std::vector<std::int64_t>& s) {
    std::vector<std::int64_t> out;
    for (auto x : s) {
      out.push_back(mod_norm(x, d));
      out.push_back(mod_norm(-x, d));
    }
    return out;
  };
  std::vector<std::int64_t> sdp = dub(sp), sdn = dub(sn);

  // (i) exact, no sampling needed
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      std::int64_t want = mod_norm(rt * (v.a[j] - v.a[i]) + 1, d);
      if (mod_quot(sp[j], sp[i], d) != want) return false;
    }

  std::vector<std::int64_t> sorted_p = sdp, sorted_n = sdn;
  std::sort(sorted_p.begin(), sorted_p.end());
  std::sort(sorted_n.begin(), sorted_n.end());
  bool univalent =
      std::adjacent_find(sorted_p.begin(), sorted_p.end()) == sorted_p.end();

  std::uint64_t state = seed ^ std::uint64_t(d);
  for (int t = 0; t < trials; ++t) {
    std::uint64_t x = detail::rand_field(state, f);
    while (f.pow(x, std::uint64_t(d)) == 1) x = detail::rand_field(state, f);
    std::uint64_t y = detail::rand_field(state, f);

    if (!univalent) {
      if (sorted_p != sorted_n) return false;  // reversibility branch fails
      if (hstar_eval(d, sdp, x, y, ctx) != hstar_eval(d, sdn, x, y, ctx))
        return false;
      continue;
    }

    std::uint64_t wd = ctx.root_pow(ctx.order() / d);
    std::uint64_t ystar = 0;
    for (std::int64_t l = 0; l < d; ++l) {
      if (d > 1 ? std::gcd(l, d) != 1 : l != 0) continue;
      std::uint64_t w = f.pow(wd, std::uint64_t(l));
      std::uint64_t winv = f.inv(w);
      // (ii): the dubbed product-sum equals F at the substituted arguments
      std::uint64_t S = 0;
      for (int i = 0; i < m; ++i) {
        std::uint64_t prod = 1;
        for (int j = 0; j < m; ++j) {
          if (j == i) continue;
          std::int64_t c = mod_quot(sp[j], sp[i], d);
          std::uint64_t wc = f.pow(w, std::uint64_t(c));
          std::uint64_t wci = f.pow(winv, std::uint64_t(c));
          prod = f.mul(prod, f.mul(f.sub(y, wc), f.sub(y, wci)));
          prod = f.mul(prod, f.inv(f.mul(f.sub(w, wc), f.sub(w, wci))));
        }
        S = f.add(S, prod);
      }
      std::vector<std::uint64_t> xs(m);
      for (int i = 0; i < m; ++i)
        xs[i] = f.pow(w, std::uint64_t(mod_norm(rt * v.a[i], d)));
      std::uint64_t u = f.mul(y, winv);
      std::uint64_t vv = f.mul(winv, winv);
      bool ok = false;
      std::uint64_t Fv = detail::eval_main_side(f, xs, u, vv, false, ok);
      if (!ok || S != Fv) return false;
      ystar = f.add(ystar, detail::y_general(f, d, sdp, x, y, w));
    }
    // (iii) and the conclusion
    if (hstar_eval(d, sdp, x, y, ctx) != ystar) return false;
    if (hstar_eval(d, sdp, x, y, ctx) != hstar_eval(d, sdn, x, y, ctx)) return false;
  }
  return true;
}

}  // namespace hodgekit
