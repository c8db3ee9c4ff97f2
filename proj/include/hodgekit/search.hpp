#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <hodgekit/common.hpp>
#include <hodgekit/hodge.hpp>
#include <hodgekit/lens.hpp>
#include <hodgekit/lmr.hpp>
#include <hodgekit/parallel.hpp>

namespace hodgekit {

struct SamplePoint {
  std::uint64_t x;
  std::uint64_t y;
  int x_offset;  // bumps applied to step off q-th roots of unity
};

// A confirmed Hodge-equivalent, non-conjugate pair of plus-minus classes.
struct PairRecord {
  std::int64_t q = 0;
  int m = 0;
  std::vector<std::int64_t> canon1, canon2;
  Int order;
  bool fingerprint_collided = false;
  bool exactly_equal = false;
  bool non_conjugate = false;
  int family_size = 2;  // number of classes sharing this Hodge series
  std::optional<AVector> lmr_witness;
  std::uint64_t fp_prime = 0;
  std::vector<std::uint64_t> confirm_primes;
  std::vector<SamplePoint> samples;
};

namespace detail {

// Step x upward until it is not a q-th root of unity. The pole condition
// depends only on (q, x), so the applied offset is identical for every
// class at the same q and fingerprints stay comparable.
inline SamplePoint resolve_sample(const RootContext& ctx, std::int64_t q,
                                  std::uint64_t x, std::uint64_t y) {
  const Fp& f = ctx.field();
  int off = 0;
  while (f.pow(x, std::uint64_t(q)) == 1) {
    x = f.add(x, 1);
    ++off;
  }
  return {x, y, off};
}

inline std::vector<SamplePoint> sample_points(const RootContext& ctx,
                                              std::int64_t q, int npoints,
                                              std::uint64_t seed) {
  std::vector<SamplePoint> pts;
  pts.reserve(npoints);
  const std::uint64_t p = ctx.prime();
  for (int i = 0; i < npoints; ++i) {
    std::uint64_t hx = splitmix64(seed ^ splitmix64(std::uint64_t(q) * 2654435761u + std::uint64_t(i) * 2 + 0));
    std::uint64_t hy = splitmix64(seed ^ splitmix64(std::uint64_t(q) * 2654435761u + std::uint64_t(i) * 2 + 1));
    pts.push_back(resolve_sample(ctx, q, 2 + hx % (p - 3), 2 + hy % (p - 3)));
  }
  return pts;
}

}  // namespace detail

// Deterministic hash of H_{q,s~} values at the sample points. Equal Hodge
// series imply equal fingerprints; pole points are stepped off internally
// with the same offsets for every class at a given q.
inline std::uint64_t fingerprint(const PlusMinusLens& L, const RootContext& ctx,
                                 std::span<const std::pair<std::uint64_t, std::uint64_t>> points) {
  const LensGroup dub = L.dubbed();
  std::uint64_t h = fnv1a_init();
  h = fnv1a_step(h, std::uint64_t(L.q()));
  h = fnv1a_step(h, ctx.prime());
  for (auto [x, y] : points) {
    SamplePoint pt = detail::resolve_sample(ctx, L.q(), x, y);
    h = fnv1a_step(h, h_eval(L.q(), dub.s(), pt.x, pt.y, ctx));
  }
  return h;
}

struct SearchOptions {
  bool fixed_point_free = true;  // restrict entries to units
  bool distinct = true;          // distinct folded entries
  std::uint64_t seed = kDefaultSeed;
  int threads = 0;  // 0 = hardware concurrency
  int npoints = 8;
  bool with_lmr_witness = true;
};

// Recover an LMR witness for a recorded pair: the least (r, t, a) with
// r^2 t = q whose pair of canonical forms matches.
inline std::optional<AVector> match_lmr(const PairRecord& rec) {
  for (std::int64_t r = 3; r * r <= rec.q; ++r) {
    if (rec.q % (r * r) != 0) continue;
    std::int64_t t = rec.q / (r * r);
    std::vector<std::int64_t> a((rec.m), 0);
    for (;;) {
      AVector v(r, t, a);
      auto [g1, g2] = lmr_pair(v);
      auto c1 = canonical_form(g1);
      auto c2 = canonical_form(g2);
      if ((c1 == rec.canon1 && c2 == rec.canon2) ||
          (c1 == rec.canon2 && c2 == rec.canon1))
        return v;
      int pos = rec.m - 1;
      while (pos >= 0 && a[pos] == r - 1) {
        a[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++a[pos];
    }
  }
  return std::nullopt;
}

// Two-tier search for Hodge-equivalent non-conjugate pairs of plus-minus
// lens classes: bucket canonical classes by modular fingerprint, then
// confirm every intra-bucket candidate exactly (full CRT bound). Soundness
// is re-asserted on emission; output order is deterministic (by q, then
// canonical forms) regardless of thread count.
inline std::vector<PairRecord> search_pairs(int m, std::int64_t qmax,
                                            SearchOptions opt = {}) {
  if (m < 1 || qmax < 1) throw std::invalid_argument("m, qmax must be >= 1");
  std::vector<std::vector<PairRecord>> per_q((qmax) + 1);

  parallel_for(qmax, opt.threads, [&](std::int64_t qi) {
    const std::int64_t q = qi + 1;
    auto classes = enumerate_pm(q, m, {opt.distinct, opt.fixed_point_free});
    if (classes.size() < 2) return;
    RootContext ctx = RootContext::make(q, 0);
    auto pts = detail::sample_points(ctx, q, opt.npoints, opt.seed);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
    raw.reserve(pts.size());
    for (const auto& pt : pts) raw.emplace_back(pt.x, pt.y);

    std::map<std::uint64_t, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      PlusMinusLens L(q, classes[i]);
      buckets[fingerprint(L, ctx, raw)].push_back(i);
    }

    const int n = 2 * m;
    const std::int64_t kmax = std::int64_t(n) * (q - 1);
    std::vector<RootContext> confirm_ctxs;
    std::vector<std::uint64_t> confirm_primes;
    for (auto& [fp, members] : buckets) {
      if (members.size() < 2) continue;
      if (confirm_ctxs.empty()) {
        confirm_ctxs =
            detail::contexts_for(q, 2 * ambient_form_dim(n, n / 2, kmax));
        for (const auto& c : confirm_ctxs) confirm_primes.push_back(c.prime());
      }
      // exact residue signature per member, computed once
      std::map<std::vector<std::uint64_t>, std::vector<std::size_t>> families;
      for (std::size_t idx : members) {
        SpectralGroup G = to_spectral(PlusMinusLens(q, classes[idx]));
        std::vector<std::uint64_t> sig;
        for (const auto& c : confirm_ctxs) {
          auto t = detail::residue_table(G, kmax, c);
          sig.insert(sig.end(), t.begin(), t.end());
        }
        families[std::move(sig)].push_back(idx);
      }
      for (auto& [sig, fam] : families) {
        if (fam.size() < 2) continue;
        for (std::size_t ai = 0; ai < fam.size(); ++ai)
          for (std::size_t bi = ai + 1; bi < fam.size(); ++bi) {
            PlusMinusLens L1(q, classes[fam[ai]]);
            PlusMinusLens L2(q, classes[fam[bi]]);
            PairRecord rec;
            rec.q = q;
            rec.m = m;
            rec.canon1 = classes[fam[ai]];
            rec.canon2 = classes[fam[bi]];
            rec.order = q;
            rec.fingerprint_collided = true;
            rec.exactly_equal = true;  // equal residue signatures over the bound
            rec.non_conjugate = !conjugate(L1, L2);
            if (!rec.non_conjugate)
              throw inconsistency_error("distinct canonical classes conjugate");
            rec.family_size = int(fam.size());
            rec.fp_prime = ctx.prime();
            rec.confirm_primes = confirm_primes;
            rec.samples = pts;
            if (opt.with_lmr_witness) rec.lmr_witness = match_lmr(rec);
            per_q[q].push_back(std::move(rec));
          }
      }
    }
    auto& out = per_q[q];
    std::sort(out.begin(), out.end(), [](const PairRecord& a, const PairRecord& b) {
      return std::pair(a.canon1, a.canon2) < std::pair(b.canon1, b.canon2);
    });
  });

  std::vector<PairRecord> out;
  for (auto& v : per_q)
    for (auto& r : v) out.push_back(std::move(r));
  return out;
}

}  // namespace hodgekit
