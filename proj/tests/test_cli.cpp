#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <sys/wait.h>

#include "nct/cli.hpp"
#include "nct/serialize.hpp"

using namespace nct;

namespace {

struct Outcome {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("complex parsing") {
  CHECK(parse_complex("0.3+1.1i") == Complex{0.3, 1.1});
  CHECK(parse_complex("0.3 - 1.1i") == Complex{0.3, -1.1});
  CHECK(parse_complex("2i") == Complex{0.0, 2.0});
  CHECK(parse_complex("-i") == Complex{0.0, -1.0});
  CHECK(parse_complex("i") == Complex{0.0, 1.0});
  CHECK(parse_complex("1.5") == Complex{1.5, 0.0});
  CHECK(parse_complex("1e-3+2e+1i") == Complex{1e-3, 20.0});
  CHECK_THROWS_AS(parse_complex(""), std::invalid_argument);
  CHECK(parse_complex("1+2j") == Complex{1.0, 2.0});
  CHECK_THROWS_AS(parse_complex("1+2k"), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("abc"), std::invalid_argument);
  Complex z{-0.25, 3.5};
  CHECK(parse_complex(format_complex(z)) == z);
}

TEST_CASE("json round trips") {
  auto t = QuadIrr::parse("(-5+sqrt5)/10");
  CHECK(quad_from_json(to_json(t)) == t);
  CHECK(quad_from_json(Json("(1+sqrt5)/2")) == QuadIrr::parse("(1+sqrt5)/2"));
  SL2Matrix g{-1, -1, 5, 4};
  CHECK(matrix_from_json(to_json(g)) == g);
  CHECK(matrix_from_json(Json("[[2,1],[1,1]]")) == SL2Matrix{2, 1, 1, 1});
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[2,1],[1,2]]")), std::invalid_argument);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[1,2,3]")), std::invalid_argument);

  auto x = TorusElement::U(t) + Complex{0.5, -2.0} * TorusElement::monomial(t, -3, 2);
  auto y = torus_from_json(to_json(x));
  CHECK(max_abs_difference(x, y) == 0.0);

  GaussianAtom a{{1.0, Complex{0.0, 2.0}}, Complex{0.1, 0.7}, Complex{-0.3, 0.2}};
  auto b = atom_from_json(to_json(a));
  CHECK(b.poly == a.poly);
  CHECK(b.alpha == a.alpha);
  CHECK(b.beta == a.beta);
  CHECK_THROWS_AS(atom_from_json(Json::parse(R"({"poly":[[1,0]],"alpha":[0,-1],"beta":[0,0]})")),
                  std::invalid_argument);

  RMData data(t, g);
  auto xi = ModuleElement::pure(data, 1, SchwartzVector(a), FiniteVector(5, {1.0, 2.0, 3.0, 4.0, 5.0}));
  auto back = module_from_json(to_json(xi));
  CHECK(back.degree() == 1);
  CHECK(relative_residual(xi, back) == 0.0);
  CHECK_THROWS_AS(module_from_json(Json::parse(R"({"theta":"sqrt2"})")), std::invalid_argument);
}

TEST_CASE("fix") {
  auto r = invoke({"fix", "--theta", "(1+sqrt5)/2"});
  REQUIRE(r.code == cli::kOk);
  auto j = r.json();
  CHECK(j.at("g") == Json::parse("[[2,1],[1,1]]"));
  CHECK(j.at("conditions").at("gen") == false);
  CHECK(j.at("config").at("command") == "fix");

  auto s = invoke({"fix", "--theta", "(-5+sqrt5)/10"}).json();
  CHECK(s.at("g") == Json::parse("[[-1,-1],[5,4]]"));
  CHECK(s.at("conditions").at("gen") == true);
  CHECK(s.at("conditions").at("koszul") == true);
}

TEST_CASE("invalid input exits 2") {
  CHECK(invoke({"fix", "--theta", "3/4"}).code == cli::kInvalidInput);
  CHECK(invoke({"fix", "--theta", "sqrt"}).code == cli::kInvalidInput);
  CHECK(invoke({"fix"}).code == cli::kInvalidInput);
  CHECK(invoke({"bogus"}).code == cli::kInvalidInput);
  CHECK(invoke({"ring", "--theta", "(-5+sqrt5)/10", "--g", "[[1,1],[5,4]]", "--tau", "0.3+1.1i"}).code ==
        cli::kInvalidInput);
  CHECK(invoke({"ring", "--theta", "(-5+sqrt5)/10", "--tau", "0.3"}).code == cli::kInvalidInput);
  CHECK(invoke({"theta", "--m", "1-2i"}).code == cli::kInvalidInput);
  CHECK(invoke({"algebra", "--theta", "sqrt2", "--samples", "x"}).code == cli::kInvalidInput);
  CHECK(invoke({"--precision", "quad", "fix", "--theta", "sqrt2"}).code == cli::kInvalidInput);
  // g fixes a different θ
  CHECK(invoke({"module-check", "--theta", "sqrt2", "--g", "[[2,1],[1,1]]", "--tau", "i"}).code ==
        cli::kInvalidInput);
}

TEST_CASE("theta command") {
  auto j = invoke({"theta", "--m", "i"}).json();
  CHECK(std::abs(j.at("value")[0].get<double>() - 1.086434811213308) < 1e-13);
  CHECK(j.at("r_reduced") == "0");
  auto k = invoke({"theta", "--r", "-1/3", "--m", "0.3+1.1i", "--z", "0.1+0.2i"}).json();
  CHECK(k.at("r_reduced") == "2/3");
  CHECK(k.at("bound").get<double>() <= 1e-15);
}

TEST_CASE("algebra and module-check") {
  auto a = invoke({"algebra", "--theta", "sqrt2", "--samples", "10"});
  REQUIRE(a.code == cli::kOk);
  CHECK(a.json().at("pass") == true);
  auto m = invoke({"module-check", "--theta", "(-5+sqrt5)/10", "--tau", "0.3+1.1i"});
  REQUIRE(m.code == cli::kOk);
  CHECK(m.json().at("pass") == true);
}

TEST_CASE("ring report") {
  auto r = invoke({"ring", "--theta", "(-5+sqrt5)/10", "--g", "[[-1,-1],[5,4]]", "--tau", "0.3+1.1i", "--triples",
                   "2", "--skip-theta-diagnostics"});
  REQUIRE(r.code == cli::kOk);
  auto j = r.json();
  CHECK(j.at("dims") == Json::parse("[1,5,15,40]"));
  CHECK(j.at("generation") == Json::parse("[true,true]"));
  CHECK(j.at("quadratic") == true);
  CHECK(j.at("assoc_residual").get<double>() < 1e-8);
}

TEST_CASE("config file merges under flags") {
  auto path = temp_file("nct_test_config.json", R"({"theta": "sqrt2", "samples": 5, "seed": 9})");
  auto j = invoke({"--config", path.string(), "algebra", "--samples", "7"}).json();
  CHECK(j.at("config").at("samples") == 7);
  CHECK(j.at("config").at("seed") == 9);
  CHECK(j.at("config").at("theta") == "sqrt2");
  CHECK(j.at("config").at("support") == 20);

  auto bad = temp_file("nct_test_bad.json", R"({"theta": "sqrt2", "samples": "many"})");
  CHECK(invoke({"--config", bad.string(), "algebra"}).code == cli::kInvalidInput);
  CHECK(invoke({"--config", "/nonexistent/nct.json", "algebra"}).code == cli::kInvalidInput);
  std::filesystem::remove(path);
  std::filesystem::remove(bad);
}

TEST_CASE("output is deterministic") {
  std::vector<std::string> args{"algebra", "--theta", "(1+sqrt5)/2", "--samples", "8", "--seed", "4"};
  CHECK(invoke(args).out == invoke(args).out);
}

TEST_CASE("precision resolution") {
  ::setenv("NCT_PRECISION", "extended", 1);
  auto j = invoke({"fix", "--theta", "sqrt2"}).json();
  CHECK(j.at("config").at("precision") == "extended");
  auto k = invoke({"--precision", "double", "fix", "--theta", "sqrt2"}).json();
  CHECK(k.at("config").at("precision") == "double");
  ::setenv("NCT_PRECISION", "bogus", 1);
  CHECK(invoke({"fix", "--theta", "sqrt2"}).code == cli::kInvalidInput);
  ::unsetenv("NCT_PRECISION");
  CHECK(invoke({"fix", "--theta", "sqrt2"}).json().at("config").at("precision") == "double");
}

TEST_CASE("binary exit codes") {
  std::string exe = NCT_CLI_PATH;
  int ok = std::system((exe + " fix --theta sqrt2 > /dev/null").c_str());
  CHECK(WEXITSTATUS(ok) == 0);
  int bad = std::system((exe + " fix --theta 3/4 > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(bad) == 2);
}
