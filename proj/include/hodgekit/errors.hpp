#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hodgekit {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// modulus q < 1
struct invalid_modulus_error : error {
  using error::error;
};

// division by a non-unit in Z_q
struct not_invertible_error : error {
  using error::error;
};

// arithmetic between cyclotomic elements over different moduli
struct modulus_mismatch_error : error {
  using error::error;
};

// integer extraction from a non-rational cyclotomic element
struct not_an_integer_error : error {
  using error::error;
};

// CRT prime product too small for the requested bound
struct precision_error : error {
  using error::error;
};

// an exactness invariant failed; signals bad input data or an engine bug
struct inconsistency_error : error {
  using error::error;
};

// L(q,s) with gcd(q, s_1,...,s_n) != 1
struct non_faithful_error : error {
  using error::error;
};

// plus-minus canonicalization on entries that are not units mod q
struct not_a_lens_error : error {
  using error::error;
};

// evaluation point coincides with a root of unity denominator
struct pole_error : error {
  using error::error;
};

// a hereditarily good vector produced a non-Hodge-equal pair
struct theorem_counterexample_error : error {
  using error::error;
};

// a bounded deterministic search ran past its safety cap
struct exhaustion_error : error {
  using error::error;
};

struct parse_error : error {
  std::size_t position;
  parse_error(const std::string& what, std::size_t pos)
      : error(what + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
};

}  // namespace hodgekit
