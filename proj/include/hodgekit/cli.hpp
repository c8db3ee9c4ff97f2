#pragma once

#include <fstream>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <hodgekit/groupio.hpp>
#include <hodgekit/hodgekit.hpp>

namespace hodgekit::cli {

namespace detail {

inline std::string join(const std::vector<std::int64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

inline std::vector<std::int64_t> parse_int_list_arg(const std::string& s) {
  return hodgekit::detail::parse_int_list(s, 0);
}

inline nlohmann::json table_json(const HodgeTable& t) {
  nlohmann::json entries = nlohmann::json::array();
  for (std::int64_t k = 0; k <= t.kmax(); ++k)
    for (int p = 0; p <= t.dimension(); ++p)
      if (t.at(k, p) != 0)
        entries.push_back({k, p, t.at(k, p).str()});
  return {{"Q", t.modulus()},
          {"n", t.dimension()},
          {"kmax", t.kmax()},
          {"entries", entries}};
}

inline void print_table(std::ostream& out, const HodgeTable& t) {
  out << "# Q=" << t.modulus() << " n=" << t.dimension() << " kmax=" << t.kmax()
      << "  (nonzero rows: k p P_k^p)\n";
  for (std::int64_t k = 0; k <= t.kmax(); ++k)
    for (int p = 0; p <= t.dimension(); ++p)
      if (t.at(k, p) != 0)
        out << k << " " << p << " " << t.at(k, p).str() << "\n";
}

inline nlohmann::json record_json(const PairRecord& r) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : r.samples)
    samples.push_back({{"x", s.x}, {"y", s.y}, {"x_offset", s.x_offset}});
  nlohmann::json j{{"q", r.q},
                   {"m", r.m},
                   {"pair", {r.canon1, r.canon2}},
                   {"order", r.order.str()},
                   {"family_size", r.family_size},
                   {"exactly_equal", r.exactly_equal},
                   {"non_conjugate", r.non_conjugate},
                   {"samples", samples},
                   {"engines",
                    {{"fingerprint", "modular p=" + std::to_string(r.fp_prime)},
                     {"confirm", nlohmann::json(r.confirm_primes)}}}};
  if (r.lmr_witness)
    j["lmr_witness"] = {{"r", r.lmr_witness->r},
                        {"t", r.lmr_witness->t},
                        {"a", r.lmr_witness->a}};
  return j;
}

inline SpectralGroup parse_spectral_arg(const std::string& text) {
  return to_spectral(parse_group(text));
}

}  // namespace detail

// Entry point behind the hodgekit binary; takes the argument list without
// the program name. Exit codes: 0 success/true, 3 mathematical false,
// 2 usage or parse error, 1 internal error.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"exact Hodge series toolkit for finite diagonalizable matrix groups"};
  app.require_subcommand(1);

  // --- series ---
  std::string series_group, series_engine = "modular", series_format = "text";
  std::int64_t series_kmax = 0;
  auto* series = app.add_subcommand("series", "print the table P_k^p of a group");
  series->add_option("group", series_group, "group literal or spectral file")->required();
  series->add_option("--kmax", series_kmax, "largest coefficient degree")->required();
  series->add_option("--engine", series_engine, "modular|cyclotomic")
      ->check(CLI::IsMember({"modular", "cyclotomic"}));
  series->add_option("--format", series_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  // --- numerator ---
  std::string num_group, num_format = "text";
  auto* numerator =
      app.add_subcommand("numerator", "numerator of the series over (1-x^Q)^n");
  numerator->add_option("group", num_group)->required();
  numerator->add_option("--format", num_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  // --- equal ---
  std::string eq_g1, eq_g2;
  auto* equal = app.add_subcommand("equal", "decide Hodge equivalence (exit 0/3)");
  equal->add_option("group1", eq_g1)->required();
  equal->add_option("group2", eq_g2)->required();

  // --- conjugate ---
  std::string cj_g1, cj_g2;
  auto* conj =
      app.add_subcommand("conjugate", "decide lens-group conjugacy (exit 0/3)");
  conj->add_option("group1", cj_g1)->required();
  conj->add_option("group2", cj_g2)->required();

  // --- canon ---
  std::string canon_group;
  auto* canon = app.add_subcommand("canon", "canonical form of a plus-minus group");
  canon->add_option("group", canon_group)->required();

  // --- lmr ---
  auto* lmr = app.add_subcommand("lmr", "the LMR construction");
  lmr->require_subcommand(1);
  std::int64_t lmr_r = 0, lmr_t = 0, lmr_cr = 0, lmr_qmax = 0;
  std::string lmr_a;
  auto* lmr_build_cmd = lmr->add_subcommand("build", "build L±(r^2 t, rta+1)");
  lmr_build_cmd->add_option("r", lmr_r)->required();
  lmr_build_cmd->add_option("t", lmr_t)->required();
  lmr_build_cmd->add_option("a", lmr_a, "comma-separated entries")->required();
  auto* lmr_classify_cmd =
      lmr->add_subcommand("classify", "section-6 predicates of a mod r");
  lmr_classify_cmd->add_option("a", lmr_a, "comma-separated entries")->required();
  lmr_classify_cmd->add_option("--r", lmr_cr, "modulus")->required();
  auto* lmr_enum_cmd =
      lmr->add_subcommand("enumerate", "all useful (r,t) with r^2 t <= qmax");
  lmr_enum_cmd->add_option("--a", lmr_a, "comma-separated entries")->required();
  lmr_enum_cmd->add_option("--qmax", lmr_qmax)->required();
  auto* lmr_check_cmd =
      lmr->add_subcommand("check", "Theorem-1 battery on (r,t,a)");
  lmr_check_cmd->add_option("r", lmr_r)->required();
  lmr_check_cmd->add_option("t", lmr_t)->required();
  lmr_check_cmd->add_option("a", lmr_a, "comma-separated entries")->required();

  // --- search ---
  int search_m = 0, search_threads = 0, search_points = 8;
  std::int64_t search_qmax = 0;
  std::uint64_t search_seed = kDefaultSeed;
  std::string search_out;
  bool search_no_fpf = false, search_repeats = false, search_no_witness = false;
  auto* search =
      app.add_subcommand("search", "find Hodge-equivalent non-conjugate pairs");
  search->add_option("--m", search_m, "rotation count")->required();
  search->add_option("--qmax", search_qmax)->required();
  search->add_option("--out", search_out, "write a JSON report");
  search->add_option("--threads", search_threads, "0 = hardware concurrency");
  search->add_option("--seed", search_seed, "sample-point seed");
  search->add_option("--points", search_points, "fingerprint sample points");
  search->add_flag("--no-fixed-point-free", search_no_fpf,
                   "allow non-unit entries");
  search->add_flag("--allow-repeats", search_repeats,
                   "allow repeated folded entries");
  search->add_flag("--no-lmr-witness", search_no_witness,
                   "skip LMR witness matching");

  // --- verify identities ---
  auto* verify = app.add_subcommand("verify", "symbolic identity suite");
  verify->require_subcommand(1);
  auto* verify_id = verify->add_subcommand("identities", "verify F=G and friends");
  int v_main = 4, v_sub = 6, v_pf = 4, v_trials = 10, v_randm = 8;
  std::uint64_t v_seed = kDefaultSeed;
  verify_id->add_option("--main-max-m", v_main, "symbolic F=G up to this m");
  verify_id->add_option("--subsidiary-max-m", v_sub);
  verify_id->add_option("--pf-max-n", v_pf);
  verify_id->add_option("--trials", v_trials, "randomized trials");
  verify_id->add_option("--rand-max-m", v_randm, "randomized checks up to this m");
  verify_id->add_option("--seed", v_seed);

  std::vector<const char*> argv;
  argv.push_back("hodgekit");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (*series) {
      Engine eng = series_engine == "modular" ? Engine::modular : Engine::cyclotomic;
      HodgeTable t =
          hodge_table(detail::parse_spectral_arg(series_group), series_kmax, eng);
      if (series_format == "json")
        out << detail::table_json(t).dump(2) << "\n";
      else
        detail::print_table(out, t);
      return 0;
    }
    if (*numerator) {
      HodgeNumerator N = hodge_numerator(detail::parse_spectral_arg(num_group));
      if (num_format == "json") {
        nlohmann::json entries = nlohmann::json::array();
        for (std::int64_t k = 0; k <= N.xdeg(); ++k)
          for (int p = 0; p <= N.dimension(); ++p)
            if (N.at(k, p) != 0) entries.push_back({k, p, N.at(k, p).str()});
        out << nlohmann::json{{"Q", N.modulus()},
                              {"n", N.dimension()},
                              {"den", N.den().str()},
                              {"entries", entries}}
                   .dump(2)
            << "\n";
      } else {
        out << "# numerator over (1-x^" << N.modulus() << ")^" << N.dimension()
            << ", denominator " << N.den().str() << " (rows: k p N_k^p)\n";
        for (std::int64_t k = 0; k <= N.xdeg(); ++k)
          for (int p = 0; p <= N.dimension(); ++p)
            if (N.at(k, p) != 0)
              out << k << " " << p << " " << N.at(k, p).str() << "\n";
      }
      return 0;
    }
    if (*equal) {
      bool eq = hodge_equal(detail::parse_spectral_arg(eq_g1),
                            detail::parse_spectral_arg(eq_g2));
      out << (eq ? "equal" : "not equal") << "\n";
      return eq ? 0 : 3;
    }
    if (*conj) {
      auto as_lens = [](const std::string& text) -> LensGroup {
        ParsedGroup g = parse_group(text);
        if (std::holds_alternative<LensGroup>(g)) return std::get<LensGroup>(g);
        if (std::holds_alternative<PlusMinusLens>(g))
          return std::get<PlusMinusLens>(g).dubbed();
        throw parse_error("conjugacy needs lens-group literals", 0);
      };
      auto u = conjugating_unit(as_lens(cj_g1), as_lens(cj_g2));
      if (u) {
        out << "conjugate u=" << *u << "\n";
        return 0;
      }
      out << "not conjugate\n";
      return 3;
    }
    if (*canon) {
      ParsedGroup g = parse_group(canon_group);
      if (!std::holds_alternative<PlusMinusLens>(g))
        throw parse_error("canon expects an Lpm literal", 0);
      out << detail::join(canonical_form(std::get<PlusMinusLens>(g))) << "\n";
      return 0;
    }
    if (*lmr) {
      if (*lmr_build_cmd) {
        AVector v(lmr_r, lmr_t, detail::parse_int_list_arg(lmr_a));
        out << print_group(lmr_build(v)) << "\n";
        return 0;
      }
      if (*lmr_classify_cmd) {
        Classification c =
            classify(detail::parse_int_list_arg(lmr_a), lmr_cr);
        out << "univalent=" << (c.univalent ? "true" : "false") << "\n"
            << "reversible=" << (c.reversible ? "true" : "false");
        if (c.reversing_constant) out << " (c=" << *c.reversing_constant << ")";
        out << "\ngood=" << (c.good ? "true" : "false") << "\n"
            << "hereditarily_good=" << (c.hereditarily_good ? "true" : "false");
        if (c.failing_divisor) out << " (fails at d=" << *c.failing_divisor << ")";
        out << "\nuseful=" << (c.useful ? "true" : "false") << "\n";
        return 0;
      }
      if (*lmr_enum_cmd) {
        auto list = enumerate_lmr(detail::parse_int_list_arg(lmr_a), lmr_qmax);
        for (const auto& v : list)
          out << "r=" << v.r << " t=" << v.t << " q=" << v.q() << "\n";
        out << "count=" << list.size() << "\n";
        return 0;
      }
      if (*lmr_check_cmd) {
        AVector v(lmr_r, lmr_t, detail::parse_int_list_arg(lmr_a));
        TheoremCheck tc = theorem_check(v);
        out << "hereditarily_good="
            << (tc.classification.hereditarily_good ? "true" : "false") << "\n"
            << "hodge_equal=" << (tc.hodge_equal ? "true" : "false") << "\n"
            << "conjugate=" << (tc.conjugate ? "true" : "false") << "\n";
        return 0;
      }
    }
    if (*search) {
      SearchOptions opt;
      opt.fixed_point_free = !search_no_fpf;
      opt.distinct = !search_repeats;
      opt.seed = search_seed;
      opt.threads = search_threads;
      opt.npoints = search_points;
      opt.with_lmr_witness = !search_no_witness;
      auto pairs = search_pairs(search_m, search_qmax, opt);
      for (const auto& r : pairs) {
        out << "q=" << r.q << " pair=(" << detail::join(r.canon1) << ")/("
            << detail::join(r.canon2) << ") order=" << r.order.str()
            << " family=" << r.family_size;
        if (r.lmr_witness)
          out << " lmr=(" << r.lmr_witness->r << "," << r.lmr_witness->t << ",("
              << detail::join(r.lmr_witness->a) << "))";
        out << "\n";
      }
      out << "pairs=" << pairs.size() << "\n";
      if (!search_out.empty()) {
        nlohmann::json report{{"m", search_m},
                              {"qmax", search_qmax},
                              {"seed", search_seed},
                              {"npoints", search_points},
                              {"pairs", nlohmann::json::array()}};
        for (const auto& r : pairs) report["pairs"].push_back(detail::record_json(r));
        std::ofstream f(search_out);
        f << report.dump(2) << "\n";
      }
      return 0;
    }
    if (*verify_id) {
      bool all = true;
      auto report = [&](const std::string& name, bool okv) {
        out << name << ": " << (okv ? "ok" : "FAILED") << "\n";
        all = all && okv;
      };
      for (int m = 1; m <= v_main; ++m)
        report("main identity m=" + std::to_string(m) + " symbolic",
               verify_main_identity(m, VerifyMode::symbolic));
      for (int m = 0; m <= v_sub; ++m)
        report("subsidiary m=" + std::to_string(m) + " symbolic",
               verify_subsidiary(m, VerifyMode::symbolic));
      for (int n = 1; n <= v_pf; ++n)
        report("partial fraction n=" + std::to_string(n) + " symbolic",
               verify_partial_fraction(n, VerifyMode::symbolic));
      for (int m = 1; m <= v_randm; ++m)
        report("main identity m=" + std::to_string(m) + " randomized",
               verify_main_identity(m, VerifyMode::randomized, v_trials, v_seed));
      for (int m = 0; m <= v_randm; ++m)
        report("subsidiary m=" + std::to_string(m) + " randomized",
               verify_subsidiary(m, VerifyMode::randomized, v_trials, v_seed));
      return all ? 0 : 3;
    }
  } catch (const parse_error& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const non_faithful_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const not_a_lens_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  err << "no subcommand handled\n";
  return 2;
}

}  // namespace hodgekit::cli
