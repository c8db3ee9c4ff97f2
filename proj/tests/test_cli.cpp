#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include <hodgekit/cli.hpp>
#include <hodgekit/groupio.hpp>

using namespace hodgekit;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("parse_group literals", "[cli]") {
  SECTION("plus-minus literal") {
    ParsedGroup g = parse_group("Lpm:49:1,6,15");
    REQUIRE(std::holds_alternative<PlusMinusLens>(g));
    CHECK(std::get<PlusMinusLens>(g) == PlusMinusLens(49, {1, 6, 15}));
  }
  SECTION("negative entries normalize") {
    ParsedGroup g = parse_group("L:49:1,-1,8,-8,22,-22");
    REQUIRE(std::holds_alternative<LensGroup>(g));
    CHECK(std::get<LensGroup>(g) ==
          LensGroup(49, {1, 48, 8, 41, 22, 27}));
  }
  SECTION("faithful non-unit entries are accepted") {
    CHECK_NOTHROW(parse_group("L:6:2,3"));
  }
  SECTION("gcd violations are rejected") {
    CHECK_THROWS_AS(parse_group("L:4:2"), non_faithful_error);
    CHECK_THROWS_AS(parse_group("Lpm:9:3,6"), non_faithful_error);
  }
  SECTION("malformed literals carry a position") {
    try {
      parse_group("L:49:1,x,3");
      FAIL("expected parse_error");
    } catch (const parse_error& e) {
      CHECK(e.position >= 5);
    }
    CHECK_THROWS_AS(parse_group("L:49"), parse_error);
    CHECK_THROWS_AS(parse_group("nonsense"), parse_error);
  }
  SECTION("round trip on canonical literals") {
    for (std::string lit : {"L:49:1,8,22,27,41,48", "Lpm:49:1,6,15", "L:6:2,3"}) {
      ParsedGroup g = parse_group(lit);
      std::string printed = std::holds_alternative<LensGroup>(g)
                                ? print_group(std::get<LensGroup>(g))
                                : print_group(std::get<PlusMinusLens>(g));
      CHECK(printed == lit);
    }
  }
}

TEST_CASE("spectral file round trip", "[cli]") {
  SpectralGroup g(6, {{{0, 0}, 1}, {{2, 4}, 2}, {{3, 3}, 3}});
  std::stringstream buf;
  write_spectral(buf, g);
  SpectralGroup back = parse_spectral(buf);
  CHECK(back.modulus() == 6);
  CHECK(back.order() == 6);
  CHECK(back.elements()[1].exps == std::vector<std::int64_t>{2, 4});
  CHECK(back.elements()[1].mult == 2);

  SECTION("comments and blank lines are fine") {
    std::stringstream doc("# a comment\nQ 2\n\nn 1\ne 0 1\ne 1 1 # inline\n");
    CHECK(parse_spectral(doc).order() == 2);
  }
  SECTION("errors carry the line") {
    std::stringstream doc("Q 2\nbogus 3\n");
    CHECK_THROWS_AS(parse_spectral(doc), parse_error);
  }
}

TEST_CASE("cli equal/conjugate exit codes", "[cli]") {
  CHECK(run_cli({"equal", "Lpm:49:1,6,15", "Lpm:49:1,6,20"}).code == 0);
  CHECK(run_cli({"equal", "Lpm:5:1,1", "Lpm:5:1,2"}).code == 3);
  auto r = run_cli({"conjugate", "Lpm:49:1,6,15", "Lpm:49:1,6,20"});
  CHECK(r.code == 3);
  CHECK(r.out.find("not conjugate") != std::string::npos);
  r = run_cli({"conjugate", "L:49:1,-1,8,-8,22,-22", "L:49:-6,6,1,-1,15,-15"});
  CHECK(r.code == 0);
  CHECK(r.out.find("u=6") != std::string::npos);
}

TEST_CASE("cli canon and lmr", "[cli]") {
  CHECK(run_cli({"canon", "Lpm:49:1,8,22"}).out == "1,6,15\n");
  auto r = run_cli({"lmr", "build", "7", "1", "0,1,3"});
  CHECK(r.out == "Lpm:49:1,8,22\n");
  r = run_cli({"lmr", "classify", "0,1,3", "--r", "7"});
  CHECK(r.code == 0);
  CHECK(r.out.find("useful=true") != std::string::npos);
  r = run_cli({"lmr", "classify", "0,1,3", "--r", "3"});
  CHECK(r.out.find("good=false") != std::string::npos);
  r = run_cli({"lmr", "enumerate", "--a", "0,1,3", "--qmax", "100"});
  CHECK(r.out.find("count=4") != std::string::npos);
  r = run_cli({"lmr", "check", "7", "1", "0,1,3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("hodge_equal=true") != std::string::npos);
  CHECK(r.out.find("conjugate=false") != std::string::npos);
}

TEST_CASE("cli series output", "[cli]") {
  auto r = run_cli({"series", "L:2:1", "--kmax", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0 0 1") != std::string::npos);
  CHECK(r.out.find("3 1 1") != std::string::npos);

  r = run_cli({"series", "L:2:1", "--kmax", "3", "--engine", "cyclotomic",
               "--format", "json"});
  CHECK(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["Q"] == 2);
  CHECK(doc["n"] == 1);
  CHECK(doc["entries"].size() == 4);
}

TEST_CASE("cli usage errors exit 2", "[cli]") {
  CHECK(run_cli({"equal", "Lpm:49:1,6,15"}).code == 2);      // missing arg
  CHECK(run_cli({"equal", "L:49:1,x", "L:49:1"}).code == 2);  // parse error
  CHECK(run_cli({"equal", "L:4:2", "L:4:2"}).code == 2);      // non-faithful
  CHECK(run_cli({"bogus"}).code == 2);
  CHECK(run_cli({"canon", "L:5:1,2"}).code == 2);  // canon needs Lpm
  CHECK(run_cli({}).code == 2);
}

TEST_CASE("cli search with JSON report", "[cli]") {
  std::string path = "search_report_test.json";
  auto r = run_cli({"search", "--m", "3", "--qmax", "49", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.find("pairs=1") != std::string::npos);
  std::ifstream in(path);
  REQUIRE(in.good());
  auto doc = nlohmann::json::parse(in);
  CHECK(doc["m"] == 3);
  CHECK(doc["qmax"] == 49);
  REQUIRE(doc["pairs"].size() == 1);
  const auto& rec = doc["pairs"][0];
  // stable report schema
  for (std::string key : {"q", "m", "pair", "order", "samples", "engines"})
    CHECK(rec.contains(key));
  CHECK(rec["q"] == 49);
  CHECK(rec["pair"][0] == nlohmann::json({1, 6, 15}));
  CHECK(rec["pair"][1] == nlohmann::json({1, 6, 20}));
  CHECK(rec["lmr_witness"]["r"] == 7);
  CHECK(rec["samples"].size() == 8);
  std::remove(path.c_str());
}

TEST_CASE("cli verify identities", "[cli]") {
  auto r = run_cli({"verify", "identities", "--main-max-m", "2",
                    "--subsidiary-max-m", "3", "--pf-max-n", "2",
                    "--rand-max-m", "3", "--trials", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAILED") == std::string::npos);
  CHECK(r.out.find("main identity m=2 symbolic: ok") != std::string::npos);
}

TEST_CASE("cli reads spectral files", "[cli]") {
  std::string path = std::string(HODGEKIT_DATA_DIR) + "/g60.spectral";
  auto r = run_cli({"series", path, "--kmax", "15"});
  CHECK(r.code == 0);
  // invariant polynomial degrees 2, 6, 10 and the new degree-15 invariant
  CHECK(r.out.find("\n2 0 1") != std::string::npos);
  CHECK(r.out.find("\n15 0 1") != std::string::npos);
  CHECK(r.out.find("\n1 0 ") == std::string::npos);  // nothing in degree 1
}
