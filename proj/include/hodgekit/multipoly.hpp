#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include <hodgekit/common.hpp>
#include <hodgekit/errors.hpp>
#include <hodgekit/modroots.hpp>

namespace hodgekit {

// Exponent vector of a monomial; fixed capacity keeps terms flat in memory.
class Monomial {
 public:
  static constexpr int kMaxVars = 16;

  Monomial() { e_.fill(0); }

  std::uint16_t operator[](int i) const { return e_[i]; }
  void set(int i, std::uint16_t v) { e_[i] = v; }

  int total_degree() const {
    int t = 0;
    for (auto v : e_) t += v;
    return t;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i)
      r.e_[i] = std::uint16_t(a.e_[i] + b.e_[i]);
    return r;
  }

  // graded-lexicographic order
  friend bool operator<(const Monomial& a, const Monomial& b) {
    int ta = a.total_degree(), tb = b.total_degree();
    if (ta != tb) return ta < tb;
    return a.e_ < b.e_;
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;

  struct Hash {
    std::size_t operator()(const Monomial& m) const {
      std::uint64_t h = fnv1a_init();
      for (auto v : m.e_) h = fnv1a_step(h, v);
      return (h);
    }
  };

 private:
  std::array<std::uint16_t, kMaxVars> e_;
};

// Sparse multivariate polynomial with exact integer coefficients. Terms are
// kept sorted in descending graded-lex order with no zero coefficients, so
// equality is structural.
class MultiPoly {
 public:
  using Term = std::pair<Monomial, Int>;

  explicit MultiPoly(int nvars, std::vector<std::string> names = {})
      : nvars_(nvars), names_(std::move(names)) {
    if (nvars < 0 || nvars > Monomial::kMaxVars)
      throw std::invalid_argument("unsupported variable count");
  }

  static MultiPoly constant(int nvars, Int c) {
    MultiPoly p(nvars);
    if (c != 0) p.terms_.emplace_back(Monomial(), std::move(c));
    return p;
  }

  static MultiPoly variable(int nvars, int idx, Int coeff = 1) {
    MultiPoly p(nvars);
    Monomial m;
    m.set(idx, 1);
    if (coeff != 0) p.terms_.emplace_back(m, std::move(coeff));
    return p;
  }

  static MultiPoly monomial(int nvars, const Monomial& m, Int coeff) {
    MultiPoly p(nvars);
    if (coeff != 0) p.terms_.emplace_back(m, std::move(coeff));
    return p;
  }

  int nvars() const { return nvars_; }
  const std::vector<std::string>& names() const { return names_; }
  void set_names(std::vector<std::string> names) { names_ = std::move(names); }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t nterms() const { return terms_.size(); }

  std::int64_t degree(int var) const {
    std::int64_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max<std::int64_t>(d, m[var]);
    return d;
  }

  int total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
  }

  // The polynomial coefficient of var^power (with that variable removed).
  MultiPoly coefficient_of(int var, std::int64_t power) const {
    MultiPoly out(nvars_, names_);
    for (const auto& [m, c] : terms_) {
      if (m[var] == power) {
        Monomial r = m;
        r.set(var, 0);
        out.terms_.emplace_back(r, c);
      }
    }
    out.normalize();
    return out;
  }

  // Relabel variables: exponent of old variable i moves to perm[i].
  MultiPoly permuted(const std::vector<int>& perm) const {
    MultiPoly out(nvars_, names_);
    out.terms_.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
      Monomial r;
      for (int i = 0; i < nvars_; ++i) r.set(perm[i], m[i]);
      out.terms_.emplace_back(r, c);
    }
    out.normalize();
    return out;
  }

  std::uint64_t eval(std::span<const std::uint64_t> point, const Fp& f) const {
    std::uint64_t total = 0;
    for (const auto& [m, c] : terms_) {
      std::uint64_t t = f.from_int(std::int64_t(c % f.modulus()));
      for (int i = 0; i < nvars_; ++i)
        if (m[i]) t = f.mul(t, f.pow(point[i], m[i]));
      total = f.add(total, t);
    }
    return total;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check(o);
    *this = merged(*this, o, 1);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check(o);
    *this = merged(*this, o, -1);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

  MultiPoly operator-() const {
    MultiPoly out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
  }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check(b);
    if (a.is_zero() || b.is_zero()) return MultiPoly(a.nvars_, a.names_);
    // few-term factors (binomial chains) go through sorted merges; the
    // general case accumulates into a hash map
    if (b.terms_.size() <= 4 || a.terms_.size() <= 4) {
      const MultiPoly& big = b.terms_.size() <= 4 ? a : b;
      const MultiPoly& small = b.terms_.size() <= 4 ? b : a;
      MultiPoly acc(a.nvars_, a.names_);
      for (const auto& [m, c] : small.terms_)
        acc = merged(acc, big.shifted(m, c), 1);
      return acc;
    }
    std::unordered_map<Monomial, Int, Monomial::Hash> map;
    map.reserve(a.terms_.size() * 2);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) map[ma * mb] += ca * cb;
    MultiPoly out(a.nvars_, a.names_);
    out.terms_.reserve(map.size());
    for (auto& [m, c] : map)
      if (c != 0) out.terms_.emplace_back(m, std::move(c));
    std::sort(out.terms_.begin(), out.terms_.end(),
              [](const Term& x, const Term& y) { return y.first < x.first; });
    return out;
  }

  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly& scale(const Int& k) {
    if (k == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= k;
    return *this;
  }

  // this * (coeff * mono); order-preserving
  MultiPoly shifted(const Monomial& mono, const Int& coeff) const {
    MultiPoly out(nvars_, names_);
    if (coeff == 0) return out;
    out.terms_.reserve(terms_.size());
    for (const auto& [m, c] : terms_) out.terms_.emplace_back(m * mono, c * coeff);
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      if (!out.empty()) out += c > 0 ? " + " : " - ";
      else if (c < 0) out += "-";
      Int a = abs(c);
      bool printed = false;
      if (a != 1) {
        out += a.str();
        printed = true;
      }
      for (int i = 0; i < nvars_; ++i) {
        if (m[i] == 0) continue;
        if (printed) out += "*";
        out += var_name(i);
        if (m[i] > 1) out += "^" + std::to_string(m[i]);
        printed = true;
      }
      if (!printed) out += "1";
    }
    return out;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  std::string var_name(int i) const {
    if (i < int(names_.size())) return names_[i];
    return "t" + std::to_string(i);
  }

  void check(const MultiPoly& o) const {
    if (nvars_ != o.nvars_)
      throw std::invalid_argument("polynomials over different variable sets");
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& x, const Term& y) { return y.first < x.first; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first)
        out.back().second += t.second;
      else
        out.push_back(std::move(t));
    }
    std::erase_if(out, [](const Term& t) { return t.second == 0; });
    terms_ = std::move(out);
  }

  // a + sign*b for sorted inputs, by linear merge
  static MultiPoly merged(const MultiPoly& a, const MultiPoly& b, int sign) {
    MultiPoly out(a.nvars_, a.names_.empty() ? b.names_ : a.names_);
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      bool take_a;
      if (i == a.terms_.size())
        take_a = false;
      else if (j == b.terms_.size())
        take_a = true;
      else if (a.terms_[i].first == b.terms_[j].first) {
        Int c = a.terms_[i].second;
        if (sign > 0) c += b.terms_[j].second;
        else c -= b.terms_[j].second;
        if (c != 0) out.terms_.emplace_back(a.terms_[i].first, std::move(c));
        ++i;
        ++j;
        continue;
      } else
        take_a = b.terms_[j].first < a.terms_[i].first;
      if (take_a) {
        out.terms_.push_back(a.terms_[i]);
        ++i;
      } else {
        out.terms_.emplace_back(b.terms_[j].first,
                                sign > 0 ? b.terms_[j].second : -b.terms_[j].second);
        ++j;
      }
    }
    return out;
  }

  int nvars_;
  std::vector<std::string> names_;
  std::vector<Term> terms_;
};

// Quotient of two polynomials. Never normalized by gcd; equality is decided
// by cross-multiplication.
struct RationalFn {
  MultiPoly num;
  MultiPoly den;

  RationalFn(MultiPoly n, MultiPoly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw std::invalid_argument("zero denominator");
  }

  RationalFn operator+(const RationalFn& o) const {
    return RationalFn(num * o.den + o.num * den, den * o.den);
  }
  RationalFn operator*(const RationalFn& o) const {
    return RationalFn(num * o.num, den * o.den);
  }

  friend bool operator==(const RationalFn& a, const RationalFn& b) {
    return a.num * b.den == b.num * a.den;
  }
};

}  // namespace hodgekit
