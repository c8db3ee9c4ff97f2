#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include <hodgekit/common.hpp>
#include <hodgekit/errors.hpp>
#include <hodgekit/ztheory.hpp>

namespace hodgekit {

namespace detail {

// Exact division of polynomials over Z (ascending coefficients); the
// remainder must vanish.
inline std::vector<Int> poly_divide_exact(std::vector<Int> num,
                                          const std::vector<Int>& den) {
  std::size_t dn = num.size() - 1, dd = den.size() - 1;
  std::vector<Int> quot(dn - dd + 1);
  for (std::size_t k = dn - dd + 1; k-- > 0;) {
    Int c = num[k + dd] / den[dd];
    quot[k] = c;
    if (c != 0)
      for (std::size_t j = 0; j <= dd; ++j) num[k + j] -= c * den[j];
  }
  for (const Int& c : num)
    if (c != 0) throw inconsistency_error("inexact polynomial division");
  return quot;
}

}  // namespace detail

// Coefficients of the q-th cyclotomic polynomial, ascending, monic of
// degree phi(q). Computed by exact division of t^q - 1 by the product of
// the cyclotomic polynomials of the proper divisors of q.
inline std::vector<Int> cyclotomic_poly(std::int64_t q) {
  if (q < 1) throw invalid_modulus_error("q must be >= 1");
  std::map<std::int64_t, std::vector<Int>> phi;
  for (std::int64_t d : divisors(q)) {
    std::vector<Int> num((d) + 1);
    num[0] = -1;
    num[d] = 1;
    std::vector<Int> den{1};
    for (std::int64_t e : divisors(d)) {
      if (e == d) continue;
      const auto& fe = phi.at(e);
      std::vector<Int> prod(den.size() + fe.size() - 1);
      for (std::size_t i = 0; i < den.size(); ++i)
        for (std::size_t j = 0; j < fe.size(); ++j) prod[i + j] += den[i] * fe[j];
      den = std::move(prod);
    }
    phi[d] = detail::poly_divide_exact(std::move(num), den);
  }
  return phi.at(q);
}

// Per-q reduction data for Z[t]/Phi_q(t): the remainders of
// t^phi, ..., t^(2 phi - 2), built once and shared read-only.
class CycloContext {
 public:
  explicit CycloContext(std::int64_t q) : q_(q), poly_(cyclotomic_poly(q)) {
    phi_ = std::int64_t(poly_.size()) - 1;
    if (phi_ == 0) return;  // q = 1: everything is a constant
    std::vector<Int> row(poly_.begin(), poly_.end() - 1);
    for (Int& c : row) c = -c;  // t^phi = -(lower part of Phi)
    rows_.push_back(row);
    for (std::int64_t k = phi_ + 1; k <= 2 * phi_ - 2; ++k) {
      std::vector<Int> next(phi_);
      const auto& prev = rows_.back();
      // multiply by t, fold the overflowing top coefficient back in
      const Int& top = prev[(phi_) - 1];
      for (std::int64_t i = phi_ - 1; i > 0; --i)
        next[i] = prev[(i) - 1] + top * rows_[0][i];
      next[0] = top * rows_[0][0];
      rows_.push_back(std::move(next));
    }
  }

  std::int64_t q() const { return q_; }
  std::int64_t phi() const { return phi_; }
  const std::vector<Int>& poly() const { return poly_; }

  // Reduce a product polynomial of degree <= 2 phi - 2 in place to length phi.
  void reduce(std::vector<Int>& c) const {
    const std::size_t ph = std::size_t(phi_);
    for (std::size_t k = c.size(); k-- > ph;) {
      if (c[k] != 0) {
        const auto& row = rows_[k - ph];
        for (std::int64_t i = 0; i < phi_; ++i) c[i] += c[k] * row[i];
      }
    }
    c.resize((phi_ ? phi_ : 1));
  }

 private:
  std::int64_t q_;
  std::vector<Int> poly_;
  std::int64_t phi_;
  std::vector<std::vector<Int>> rows_;
};

inline const CycloContext& cyclo_context(std::int64_t q) {
  static std::mutex mu;
  static std::map<std::int64_t, std::unique_ptr<CycloContext>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it == cache.end())
    it = cache.emplace(q, std::make_unique<CycloContext>(q)).first;
  return *it->second;
}

// An element of Z[omega_q], canonically represented in Z[t]/Phi_q(t).
// Equal elements have equal coefficient vectors.
class CycloElem {
 public:
  static CycloElem integer(std::int64_t q, Int v) {
    CycloElem e(q);
    e.c_[0] = std::move(v);
    return e;
  }

  static CycloElem zero(std::int64_t q) { return CycloElem(q); }

  // omega_q^e, exponent reduced mod q.
  static CycloElem root_power(std::int64_t q, std::int64_t e) {
    const CycloContext& ctx = cyclo_context(q);
    std::int64_t phi = ctx.phi();
    e = mod_norm(e, q);
    if (phi == 0) return integer(q, 1);
    CycloElem out(q);
    if (e < phi) {
      out.c_[e] = 1;
      return out;
    }
    // shift-and-reduce from t^(phi-1)
    std::vector<Int> c((phi) + 1);
    c[(phi) - 1] = 1;
    for (std::int64_t k = phi; k <= e; ++k) {
      for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = std::move(c[i - 1]);
      c[0] = 0;
      ctx.reduce(c);
      c.resize((phi) + 1);
    }
    c.resize(phi);
    out.c_ = std::move(c);
    return out;
  }

  std::int64_t modulus() const { return q_; }
  const std::vector<Int>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const Int& v : c_)
      if (v != 0) return false;
    return true;
  }

  // Extraction of rational integers (Galois-stable values such as full
  // group sums). Throws if any higher coefficient survives.
  Int to_integer() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0)
        throw not_an_integer_error("cyclotomic element is not rational");
    return c_[0];
  }

  CycloElem& operator+=(const CycloElem& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  CycloElem& operator-=(const CycloElem& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend CycloElem operator+(CycloElem a, const CycloElem& b) { return a += b; }
  friend CycloElem operator-(CycloElem a, const CycloElem& b) { return a -= b; }

  friend CycloElem operator*(const CycloElem& a, const CycloElem& b) {
    a.check(b);
    const CycloContext& ctx = cyclo_context(a.q_);
    std::size_t phi = a.c_.size();
    std::vector<Int> prod(2 * phi - 1);
    for (std::size_t i = 0; i < phi; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < phi; ++j)
        if (b.c_[j] != 0) prod[i + j] += a.c_[i] * b.c_[j];
    }
    ctx.reduce(prod);
    CycloElem out(a.q_);
    out.c_ = std::move(prod);
    return out;
  }

  CycloElem& operator*=(const CycloElem& o) { return *this = *this * o; }

  CycloElem& scale(const Int& k) {
    for (Int& v : c_) v *= k;
    return *this;
  }

  friend bool operator==(const CycloElem&, const CycloElem&) = default;

 private:
  explicit CycloElem(std::int64_t q)
      : q_(q), c_((std::max<std::int64_t>(cyclo_context(q).phi(), 1))) {}

  void check(const CycloElem& o) const {
    if (q_ != o.q_) throw modulus_mismatch_error("cyclotomic moduli differ");
  }

  std::int64_t q_;
  std::vector<Int> c_;
};

}  // namespace hodgekit
