#include <catch2/catch_amalgamated.hpp>

#include <hodgekit/hodge.hpp>
#include <hodgekit/lens.hpp>

#include "oracles.hpp"

using namespace hodgekit;

namespace {

// uniform multiset cover of the cyclic diagonal group generated by s
SpectralGroup cyclic_cover(std::int64_t Q, const std::vector<std::int64_t>& s) {
  std::vector<SpectralGroup::Element> els;
  for (std::int64_t k = 0; k < Q; ++k) {
    SpectralGroup::Element el;
    for (auto si : s) el.exps.push_back(k * si % Q);
    els.push_back(std::move(el));
  }
  return SpectralGroup(Q, std::move(els));
}

SpectralGroup random_spectral(std::uint64_t& state, std::int64_t maxQ, int maxn) {
  state = splitmix64(state);
  std::int64_t Q = 1 + std::int64_t(state % std::uint64_t(maxQ));
  state = splitmix64(state);
  int n = 1 + int(state % std::uint64_t(maxn));
  std::vector<std::int64_t> s(n);
  for (auto& v : s) {
    state = splitmix64(state);
    v = std::int64_t(state % std::uint64_t(Q));
  }
  state = splitmix64(state);
  if (state % 3 == 0) {
    // bicyclic cover: two generators
    std::vector<std::int64_t> s2(n);
    for (auto& v : s2) {
      state = splitmix64(state);
      v = std::int64_t(state % std::uint64_t(Q));
    }
    std::vector<SpectralGroup::Element> els;
    std::int64_t Qs = std::min<std::int64_t>(Q, 8);
    for (std::int64_t k = 0; k < Qs; ++k)
      for (std::int64_t l = 0; l < Qs; ++l) {
        SpectralGroup::Element el;
        for (int i = 0; i < n; ++i) el.exps.push_back((k * s[i] + l * s2[i]) % Qs);
        els.push_back(std::move(el));
      }
    return SpectralGroup(Qs, std::move(els));
  }
  return cyclic_cover(Q, s);
}

}  // namespace

TEST_CASE("closed form of the trivial group", "[hodge]") {
  // (1+y)^n / (1-x)^n, here n = 1
  auto t = hodge_table(to_spectral(LensGroup(1, {0})), 3);
  for (std::int64_t k = 0; k <= 3; ++k)
    for (int p = 0; p <= 1; ++p) CHECK(t.at(k, p) == 1);
}

TEST_CASE("closed form of {+-I_1} = L(2,(1))", "[hodge]") {
  auto t = hodge_table(to_spectral(LensGroup(2, {1})), 3);
  for (std::int64_t k = 0; k <= 3; ++k)
    for (int p = 0; p <= 1; ++p)
      CHECK(t.at(k, p) == ((k + p) % 2 == 0 ? 1 : 0));
}

TEST_CASE("modular table matches brute-force monomial counting", "[hodge]") {
  struct Case {
    std::int64_t q;
    std::vector<std::int64_t> s;
  };
  for (const auto& c : {Case{5, {1, 2}}, Case{5, {1, 1}}, Case{7, {1, 2, 3}},
                        Case{12, {1, 5}}, Case{8, {1, 3, 5}}, Case{9, {1, 2, 4}},
                        Case{6, {1, 5, 2, 4}}}) {
    auto oracle = oracles::brute_lens_table(c.q, c.s, 10);
    auto t = hodge_table(to_spectral(LensGroup(c.q, c.s)), 10);
    for (std::int64_t k = 0; k <= 10; ++k)
      for (int p = 0; p <= int(c.s.size()); ++p)
        CHECK(t.at(k, p) == oracle[k][p]);
  }
}

TEST_CASE("modular and cyclotomic engines agree", "[hodge]") {
  std::uint64_t state = 2024;
  for (int rep = 0; rep < 12; ++rep) {
    SpectralGroup G = random_spectral(state, 18, 3);
    state = splitmix64(state);
    std::int64_t kmax = 5 + std::int64_t(state % 20);
    CHECK(hodge_table(G, kmax, Engine::modular) ==
          hodge_table(G, kmax, Engine::cyclotomic));
  }
}

TEST_CASE("hodge_equal", "[hodge]") {
  PlusMinusLens a(49, {1, 6, 15}), b(49, {1, 6, 20});
  CHECK(hodge_equal(a, b));  // the 49-pair
  CHECK(hodge_equal(a, a));
  CHECK_FALSE(hodge_equal(LensGroup(5, {1, 1}), LensGroup(5, {1, 2})));
  // different dimensions are trivially unequal
  CHECK_FALSE(hodge_equal(to_spectral(LensGroup(5, {1, 1})),
                          to_spectral(LensGroup(5, {1, 2, 3}))));
}

TEST_CASE("hodge_equal across different moduli", "[hodge]") {
  // L(2,(1)) presented over Q=2 and over Q=4 (scaled exponents)
  SpectralGroup a = to_spectral(LensGroup(2, {1}));
  SpectralGroup b(4, {{{0}, 1}, {{2}, 1}});
  CHECK(hodge_equal(a, b));
  CHECK_FALSE(hodge_equal(a, to_spectral(LensGroup(4, {1}))));
}

TEST_CASE("table invariance under unit multiple, negation, permutation",
          "[hodge]") {
  std::uint64_t state = 555;
  for (int rep = 0; rep < 6; ++rep) {
    state = splitmix64(state);
    std::int64_t q = 3 + std::int64_t(state % 15);
    std::vector<std::int64_t> s;
    for (int i = 0; i < 3; ++i) {
      state = splitmix64(state);
      s.push_back(std::int64_t(state % std::uint64_t(q)));
    }
    auto base = hodge_table(cyclic_cover(q, s), 12);
    std::vector<std::int64_t> neg, rot{s[1], s[2], s[0]};
    for (auto v : s) neg.push_back(mod_norm(-v, q));
    CHECK(hodge_table(cyclic_cover(q, neg), 12) == base);
    CHECK(hodge_table(cyclic_cover(q, rot), 12) == base);
    for (const Residue& u : unit_group(q)) {
      std::vector<std::int64_t> us;
      for (auto v : s) us.push_back(mod_norm(u.value * v, q));
      CHECK(hodge_table(cyclic_cover(q, us), 12) == base);
      break;  // one nontrivial unit is enough per repetition
    }
  }
}

TEST_CASE("almost-conjugate presentations give identical tables", "[hodge]") {
  // same element multiset (a uniform double cover of the order-3 group),
  // listed in different orders and multiplicity groupings
  SpectralGroup a(6, {{{0, 0}, 1}, {{2, 4}, 1}, {{4, 2}, 1}, {{2, 4}, 1},
                      {{4, 2}, 1}, {{0, 0}, 1}});
  SpectralGroup b(6, {{{2, 4}, 2}, {{4, 2}, 2}, {{0, 0}, 2}});
  SpectralGroup c(6, {{{0, 0}, 1}, {{2, 4}, 1}, {{4, 2}, 1}});
  CHECK(hodge_table(a, 15) == hodge_table(b, 15));
  CHECK(hodge_table(b, 15) == hodge_table(c, 15));
}

TEST_CASE("non-uniform multisets are detected", "[hodge]") {
  // covers the identity once but another element twice: not a group average
  SpectralGroup bad(6, {{{0, 0}, 1}, {{2, 4}, 2}, {{4, 2}, 1}});
  CHECK_THROWS_AS(hodge_table(bad, 12), inconsistency_error);
  CHECK_THROWS_AS(hodge_table(bad, 12, Engine::cyclotomic), inconsistency_error);
}

TEST_CASE("hodge_numerator closed forms", "[hodge]") {
  SECTION("{+-I_2}: numerator over (1-x^2)^2") {
    // averaging (1+y)^2/(1-x)^2 and (1-y)^2/(1+x)^2 over the common
    // denominator gives ((1+x)^2 (1+y)^2 + (1-x)^2 (1-y)^2) / 2
    //   = 1 + x^2 + 4xy + y^2 + x^2 y^2
    HodgeNumerator N = hodge_numerator(to_spectral(PlusMinusLens(2, {1})));
    CHECK(N.den() == 1);
    CHECK(N.modulus() == 2);
    auto expect = [](std::int64_t k, int p) -> Int {
      if ((k == 0 && p == 0) || (k == 2 && p == 0) || (k == 0 && p == 2) ||
          (k == 2 && p == 2))
        return 1;
      if (k == 1 && p == 1) return 4;
      return 0;
    };
    for (std::int64_t k = 0; k <= N.xdeg(); ++k)
      for (int p = 0; p <= 2; ++p) CHECK(N.at(k, p) == expect(k, p));
    // sanity: constant 1-forms are not invariant, x_i dx_j all are
    auto t = N.expand(4);
    CHECK(t.at(0, 1) == 0);
    CHECK(t.at(1, 1) == 4);
  }
  SECTION("trivial group, n=2, Q=1: numerator (1+y)^2") {
    SpectralGroup triv(1, {{{0, 0}, 1}});
    HodgeNumerator N = hodge_numerator(triv);
    CHECK(N.den() == 1);
    CHECK(N.at(0, 0) == 1);
    CHECK(N.at(0, 1) == 2);
    CHECK(N.at(0, 2) == 1);
  }
}

TEST_CASE("numerator engines agree and expansion reproduces the table",
          "[hodge]") {
  std::uint64_t state = 31337;
  for (int rep = 0; rep < 6; ++rep) {
    SpectralGroup G = random_spectral(state, 10, 3);
    HodgeNumerator N = hodge_numerator(G, Engine::modular);
    HodgeNumerator Nc = hodge_numerator(G, Engine::cyclotomic);
    CHECK(N == Nc);
    std::int64_t kmax = N.xdeg() + 2 * G.modulus();
    CHECK(N.expand(kmax) == hodge_table(G, kmax));
  }
}

TEST_CASE("icosahedral fixture derivation", "[hodge][icosahedron]") {
  auto rots = oracles::icosahedral_rotations();
  REQUIRE(rots.size() == 60);
  // distinctness and sampled closure
  for (std::size_t i = 0; i < rots.size(); ++i)
    for (std::size_t j = i + 1; j < rots.size(); ++j)
      CHECK_FALSE(oracles::mat_close(rots[i], rots[j]));
  std::uint64_t state = 7;
  for (int rep = 0; rep < 200; ++rep) {
    state = splitmix64(state);
    std::size_t i = state % rots.size();
    state = splitmix64(state);
    std::size_t j = state % rots.size();
    auto prod = oracles::mat_mul(rots[i], rots[j]);
    bool found = false;
    for (const auto& r : rots)
      if (oracles::mat_close(prod, r, 1e-8)) {
        found = true;
        break;
      }
    CHECK(found);
  }
  // five classes with angles tau*k/30 for k = 0,15,10,6,12
  auto counts = oracles::icosahedral_class_counts(rots);
  std::map<int, int> expect{{0, 1}, {15, 15}, {10, 20}, {6, 12}, {12, 12}};
  CHECK(counts == expect);
  // element orders per class: 1, 2, 3, 5, 5
  CHECK(30 / std::gcd(30, 15) == 2);
  CHECK(30 / std::gcd(30, 10) == 3);
  CHECK(30 / std::gcd(30, 6) == 5);
  CHECK(30 / std::gcd(30, 12) == 5);
}

TEST_CASE("G_60 numerator matches the closed form", "[hodge][icosahedron]") {
  HodgeNumerator N = hodge_numerator(oracles::g60());
  REQUIRE(N.den() == 1);
  // paper normal form: over (1-x^2)(1-x^6)(1-x^10); ours: over (1-x^30)^3.
  // Cross-multiply: N_ours * D_paper == N_paper * (1-x^30)^3, row by row in y.
  std::vector<Int> d2{1, 0, -1}, d6(7), d10(11), d30cube(91);
  d6[0] = 1;
  d6[6] = -1;
  d10[0] = 1;
  d10[10] = -1;
  std::vector<Int> dpaper =
      oracles::polymul_trunc(oracles::polymul_trunc(d2, d6, 200), d10, 200);
  d30cube[0] = 1;
  d30cube[30] = -3;
  d30cube[60] = 3;
  d30cube[90] = -1;
  std::vector<std::vector<Int>> npaper(4, std::vector<Int>(16, Int(0)));
  npaper[0][0] = 1;
  npaper[0][15] = 1;
  npaper[3][0] = 1;
  npaper[3][15] = 1;
  for (int e : {1, 5, 6, 9, 10, 14}) {
    npaper[1][e] = 1;
    npaper[2][e] = 1;
  }
  for (int p = 0; p <= 3; ++p) {
    std::vector<Int> ours(N.xdeg() + 1);
    for (std::int64_t k = 0; k <= N.xdeg(); ++k) ours[k] = N.at(k, p);
    CHECK(oracles::polymul_trunc(ours, dpaper, 200) ==
          oracles::polymul_trunc(npaper[p], d30cube, 200));
  }
}

TEST_CASE("h_eval", "[hodge]") {
  RootContext ctx = RootContext::make(4, 0);
  const Fp& f = ctx.field();
  SECTION("q=1: single term (y-1)^n/(x-1)^n") {
    std::vector<std::int64_t> s{0, 0, 0};
    std::uint64_t x = 777, y = 1234;
    std::uint64_t expect =
        f.mul(f.pow(f.sub(y, 1), 3), f.inv(f.pow(f.sub(x, 1), 3)));
    CHECK(h_eval(1, s, x, y, ctx) == expect);
  }
  SECTION("q=2, s=(1): two-term sum") {
    std::vector<std::int64_t> s{1};
    std::uint64_t x = 999, y = 55;
    std::uint64_t expect = f.add(f.mul(f.sub(y, 1), f.inv(f.sub(x, 1))),
                                 f.mul(f.add(y, 1), f.inv(f.add(x, 1))));
    CHECK(h_eval(2, s, x, y, ctx) == expect);
  }
  SECTION("pole is reported") {
    std::vector<std::int64_t> s{1};
    CHECK_THROWS_AS(h_eval(4, s, 1, 5, ctx), pole_error);
    CHECK_THROWS_AS(h_eval(4, s, ctx.root_pow(1), 5, ctx), pole_error);
  }
}

TEST_CASE("h_eval agrees on the 49-pair at random points", "[hodge]") {
  RootContext ctx = RootContext::make(49, 0);
  auto s1 = PlusMinusLens(49, {1, 6, 15}).dubbed().s();
  auto s2 = PlusMinusLens(49, {1, 6, 20}).dubbed().s();
  std::uint64_t state = 11;
  for (int rep = 0; rep < 20; ++rep) {
    state = splitmix64(state);
    std::uint64_t x = 2 + state % (ctx.prime() - 3);
    while (ctx.field().pow(x, 49) == 1) ++x;
    state = splitmix64(state);
    std::uint64_t y = 2 + state % (ctx.prime() - 3);
    CHECK(h_eval(49, s1, x, y, ctx) == h_eval(49, s2, x, y, ctx));
  }
}

TEST_CASE("hstar_eval", "[hodge]") {
  SECTION("d=1 is the single k=0 term") {
    RootContext ctx = RootContext::make(6, 0);
    const Fp& f = ctx.field();
    std::vector<std::int64_t> s{1, 5};
    std::uint64_t x = 12345, y = 678;
    CHECK(hstar_eval(1, s, x, y, ctx) ==
          f.mul(f.pow(f.sub(y, 1), 2), f.inv(f.pow(f.sub(x, 1), 2))));
  }
  SECTION("H = sum of H* over divisors, q=4, s=(1,3)") {
    RootContext ctx = RootContext::make(4, 0);
    std::vector<std::int64_t> s{1, 3};
    std::uint64_t state = 99;
    for (int rep = 0; rep < 10; ++rep) {
      state = splitmix64(state);
      std::uint64_t x = 2 + state % (ctx.prime() - 3);
      while (ctx.field().pow(x, 4) == 1) ++x;
      state = splitmix64(state);
      std::uint64_t y = 2 + state % (ctx.prime() - 3);
      std::uint64_t total = 0;
      for (std::int64_t d : divisors(4))
        total = ctx.field().add(total, hstar_eval(d, s, x, y, ctx));
      CHECK(h_eval(4, s, x, y, ctx) == total);
    }
  }
  SECTION("H* at d=7 is negation-invariant for dub(7a+1)") {
    RootContext ctx = RootContext::make(49, 0);
    std::vector<std::int64_t> ap, an;
    for (std::int64_t ai : {0, 1, 3}) {
      ap.push_back(7 * ai + 1);
      ap.push_back(-(7 * ai + 1));
      an.push_back(-7 * ai + 1);
      an.push_back(-(-7 * ai + 1));
    }
    std::uint64_t state = 3;
    for (int rep = 0; rep < 10; ++rep) {
      state = splitmix64(state);
      std::uint64_t x = 2 + state % (ctx.prime() - 3);
      while (ctx.field().pow(x, 7) == 1) ++x;
      state = splitmix64(state);
      std::uint64_t y = 2 + state % (ctx.prime() - 3);
      CHECK(hstar_eval(7, ap, x, y, ctx) == hstar_eval(7, an, x, y, ctx));
    }
  }
}

TEST_CASE("SpectralGroup validation", "[hodge]") {
  CHECK_THROWS_AS(SpectralGroup(6, {{{1, 2}, 1}}), inconsistency_error);  // no identity
  CHECK_THROWS_AS(SpectralGroup(6, {{{0, 0}, 0}}), inconsistency_error);  // mult < 1
  CHECK_THROWS_AS(SpectralGroup(0, {{{0}, 1}}), invalid_modulus_error);
  SpectralGroup g(6, {{{-1, 7}, 1}, {{0, 0}, 1}});
  CHECK(g.elements()[0].exps == std::vector<std::int64_t>{5, 1});
}
