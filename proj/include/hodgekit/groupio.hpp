#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <hodgekit/errors.hpp>
#include <hodgekit/hodge.hpp>
#include <hodgekit/lens.hpp>

namespace hodgekit {

using ParsedGroup = std::variant<LensGroup, PlusMinusLens, SpectralGroup>;

namespace detail {

inline std::vector<std::int64_t> parse_int_list(const std::string& text,
                                                std::size_t offset) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                  : comma - pos);
    try {
      std::size_t used = 0;
      std::int64_t v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw parse_error("expected integer, got '" + tok + "'", offset + pos);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace detail

// Parse a spectral-group document:
//   Q <modulus>
//   n <dimension>
//   e <e1,...,en> <mult>     (one line per element)
// '#' starts a comment; blank lines are ignored.
inline SpectralGroup parse_spectral(std::istream& in) {
  std::int64_t Q = -1, n = -1;
  std::vector<SpectralGroup::Element> els;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t h = line.find('#');
    if (h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "Q") {
      if (!(ls >> Q)) throw parse_error("bad Q line", lineno);
    } else if (key == "n") {
      if (!(ls >> n)) throw parse_error("bad n line", lineno);
    } else if (key == "e") {
      std::string exps;
      std::int64_t mult = 1;
      if (!(ls >> exps)) throw parse_error("bad element line", lineno);
      ls >> mult;
      SpectralGroup::Element el;
      el.exps = detail::parse_int_list(exps, 0);
      el.mult = mult;
      if (n >= 0 && std::int64_t(el.exps.size()) != n)
        throw parse_error("element has wrong dimension", lineno);
      els.push_back(std::move(el));
    } else {
      throw parse_error("unknown key '" + key + "'", lineno);
    }
  }
  if (Q < 1) throw parse_error("missing Q", lineno);
  return SpectralGroup(Q, std::move(els));
}

inline void write_spectral(std::ostream& out, const SpectralGroup& G) {
  out << "Q " << G.modulus() << "\n";
  out << "n " << G.dimension() << "\n";
  for (const auto& el : G.elements()) {
    out << "e ";
    for (std::size_t i = 0; i < el.exps.size(); ++i)
      out << (i ? "," : "") << el.exps[i];
    out << " " << el.mult << "\n";
  }
}

// Group literals: "L:<q>:<s1,s2,...>", "Lpm:<q>:<s1,...,sm>", or a path to
// a spectral-group file. Lens literals must present faithfully
// (gcd(q, entries) = 1).
inline ParsedGroup parse_group(const std::string& text) {
  auto parse_lens_body = [&](std::size_t head) -> std::pair<std::int64_t, std::vector<std::int64_t>> {
    std::size_t colon = text.find(':', head);
    if (colon == std::string::npos)
      throw parse_error("expected ':' after modulus", text.size());
    std::string qtext = text.substr(head, colon - head);
    std::int64_t q = 0;
    try {
      std::size_t used = 0;
      q = std::stoll(qtext, &used);
      if (used != qtext.size()) throw std::invalid_argument(qtext);
    } catch (const std::exception&) {
      throw parse_error("bad modulus '" + qtext + "'", head);
    }
    auto s = detail::parse_int_list(text.substr(colon + 1), colon + 1);
    return {q, std::move(s)};
  };

  if (text.rfind("Lpm:", 0) == 0) {
    auto [q, s] = parse_lens_body(4);
    PlusMinusLens L(q, std::move(s));
    std::int64_t g = q;
    for (auto v : L.s()) g = std::gcd(g, v);
    if (q > 1 && g != 1)
      throw non_faithful_error("gcd(q, entries) != 1 in '" + text + "'");
    return L;
  }
  if (text.rfind("L:", 0) == 0) {
    auto [q, s] = parse_lens_body(2);
    LensGroup L(q, std::move(s));
    if (L.content() != 1)
      throw non_faithful_error("gcd(q, entries) != 1 in '" + text + "'");
    return L;
  }
  if (std::filesystem::exists(text)) {
    std::ifstream in(text);
    if (!in) throw parse_error("cannot open '" + text + "'", 0);
    return parse_spectral(in);
  }
  throw parse_error("unrecognized group literal '" + text + "'", 0);
}

inline std::string print_group(const LensGroup& L) {
  std::string out = "L:" + std::to_string(L.q()) + ":";
  for (std::size_t i = 0; i < L.s().size(); ++i)
    out += (i ? "," : "") + std::to_string(L.s()[i]);
  return out;
}

inline std::string print_group(const PlusMinusLens& L) {
  std::string out = "Lpm:" + std::to_string(L.q()) + ":";
  for (std::size_t i = 0; i < L.s().size(); ++i)
    out += (i ? "," : "") + std::to_string(L.s()[i]);
  return out;
}

inline SpectralGroup to_spectral(const ParsedGroup& g) {
  if (std::holds_alternative<SpectralGroup>(g)) return std::get<SpectralGroup>(g);
  if (std::holds_alternative<LensGroup>(g)) return to_spectral(std::get<LensGroup>(g));
  return to_spectral(std::get<PlusMinusLens>(g));
}

}  // namespace hodgekit
