#include <catch2/catch_amalgamated.hpp>

#include <set>

#include <hodgekit/search.hpp>

using namespace hodgekit;

namespace {

std::vector<std::pair<std::uint64_t, std::uint64_t>> test_points(
    const RootContext& ctx, int n, std::uint64_t seed) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pts;
  std::uint64_t state = seed;
  for (int i = 0; i < n; ++i) {
    state = splitmix64(state);
    std::uint64_t x = 2 + state % (ctx.prime() - 3);
    state = splitmix64(state);
    std::uint64_t y = 2 + state % (ctx.prime() - 3);
    pts.emplace_back(x, y);
  }
  return pts;
}

// exact all-pairs search without fingerprinting, for cross-checking
std::set<std::tuple<std::int64_t, std::vector<std::int64_t>, std::vector<std::int64_t>>>
brute_pairs(int m, std::int64_t qmax) {
  std::set<std::tuple<std::int64_t, std::vector<std::int64_t>, std::vector<std::int64_t>>>
      out;
  for (std::int64_t q = 1; q <= qmax; ++q) {
    auto classes = enumerate_pm(q, m);
    for (std::size_t i = 0; i < classes.size(); ++i)
      for (std::size_t j = i + 1; j < classes.size(); ++j)
        if (hodge_equal(PlusMinusLens(q, classes[i]), PlusMinusLens(q, classes[j])))
          out.insert({q, classes[i], classes[j]});
  }
  return out;
}

}  // namespace

TEST_CASE("fingerprint determinism and discrimination", "[search]") {
  RootContext ctx = RootContext::make(49, 0);
  auto pts = test_points(ctx, 8, 1);
  PlusMinusLens a(49, {1, 6, 15}), b(49, {1, 6, 20});
  CHECK(fingerprint(a, ctx, pts) == fingerprint(a, ctx, pts));
  CHECK(fingerprint(a, ctx, pts) == fingerprint(b, ctx, pts));  // the 49-pair

  RootContext c5 = RootContext::make(5, 0);
  auto pts5 = test_points(c5, 8, 1);
  CHECK(fingerprint(PlusMinusLens(5, {1, 1}), c5, pts5) !=
        fingerprint(PlusMinusLens(5, {1, 2}), c5, pts5));
  // and the separation is genuine, not a fingerprint artifact
  CHECK_FALSE(hodge_equal(PlusMinusLens(5, {1, 1}), PlusMinusLens(5, {1, 2})));
}

TEST_CASE("fingerprint steps off poles deterministically", "[search]") {
  RootContext ctx = RootContext::make(8, 0);
  // plant a pole: x = w^3
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pts{
      {ctx.root_pow(3), 12345}, {77777, 500}};
  PlusMinusLens a(8, {1, 3});
  CHECK(fingerprint(a, ctx, pts) == fingerprint(a, ctx, pts));
  SamplePoint resolved = hodgekit::detail::resolve_sample(ctx, 8, ctx.root_pow(3), 12345);
  CHECK(resolved.x_offset > 0);
  CHECK(ctx.field().pow(resolved.x, 8) != 1);
}

TEST_CASE("search finds the 49-pair and nothing below it", "[search]") {
  auto recs = search_pairs(3, 49);
  REQUIRE(recs.size() == 1);
  const PairRecord& r = recs[0];
  CHECK(r.q == 49);
  CHECK(r.order == 49);
  CHECK(r.canon1 == std::vector<std::int64_t>{1, 6, 15});
  CHECK(r.canon2 == std::vector<std::int64_t>{1, 6, 20});
  CHECK(r.exactly_equal);
  CHECK(r.non_conjugate);
  CHECK(r.family_size == 2);
  REQUIRE(r.lmr_witness.has_value());
  CHECK(r.lmr_witness->r == 7);
  CHECK(r.lmr_witness->t == 1);
  CHECK(r.lmr_witness->a == std::vector<std::int64_t>{0, 1, 3});
  CHECK(r.samples.size() == 8);
}

TEST_CASE("search m=1 finds nothing small", "[search]") {
  CHECK(search_pairs(1, 50).empty());
}

TEST_CASE("search completeness at small scale", "[search]") {
  // against a direct all-pairs exact comparison (no fingerprinting)
  for (int m : {1, 2}) {
    auto brute = brute_pairs(m, 30);
    auto recs = search_pairs(m, 30, {.with_lmr_witness = false});
    std::set<std::tuple<std::int64_t, std::vector<std::int64_t>, std::vector<std::int64_t>>>
        got;
    for (const auto& r : recs) got.insert({r.q, r.canon1, r.canon2});
    CHECK(got == brute);
  }
}

TEST_CASE("search output is deterministic and thread-independent", "[search]") {
  auto one = search_pairs(3, 64, {.threads = 1});
  auto two = search_pairs(3, 64, {.threads = 2});
  REQUIRE(one.size() == two.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].q == two[i].q);
    CHECK(one[i].canon1 == two[i].canon1);
    CHECK(one[i].canon2 == two[i].canon2);
  }
}

TEST_CASE("emitted pairs re-verify", "[search]") {
  auto recs = search_pairs(3, 64);
  REQUIRE(recs.size() == 2);  // q=49 and q=64
  for (const auto& r : recs) {
    PlusMinusLens a(r.q, r.canon1), b(r.q, r.canon2);
    CHECK(hodge_equal(a, b));
    CHECK_FALSE(conjugate(a, b));
    RootContext ctx = RootContext::make(r.q, 0);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pts;
    for (const auto& s : r.samples) pts.emplace_back(s.x, s.y);
    CHECK(fingerprint(a, ctx, pts) == fingerprint(b, ctx, pts));
  }
}

TEST_CASE("match_lmr", "[search]") {
  PairRecord rec;
  rec.q = 64;
  rec.m = 3;
  rec.canon1 = {1, 7, 17};
  rec.canon2 = {1, 7, 23};
  auto w = match_lmr(rec);
  REQUIRE(w.has_value());
  CHECK(w->r == 8);
  CHECK(w->t == 1);
  CHECK(w->a == std::vector<std::int64_t>{0, 1, 3});

  SECTION("absence") {
    PairRecord none;
    none.q = 50;  // not of the form r^2 t with r > 2... beyond r=5
    none.m = 3;
    none.canon1 = {1, 3, 7};
    none.canon2 = {1, 3, 9};
    CHECK_FALSE(match_lmr(none).has_value());
  }
}
