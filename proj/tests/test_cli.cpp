#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = xstates::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

const char* kBell = R"({"n": 2, "components": {"XX": [1, 0], "YY": [-1, 0], "ZZ": [1, 0]}})";

}  // namespace

TEST_CASE("verify dims at two qubits") {
  const Result r = run({"verify", "dims", "--n", "2", "--seed", "1", "--json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.size() == 1);
  CHECK(j[0]["observed"]["param_rank"] == nlohmann::json::array({11}));
  CHECK(j[0]["observed"]["orbit_rank"] == nlohmann::json::array({6}));
  CHECK(j[0]["pass"].get<bool>());
}

TEST_CASE("verify exit status follows the reports") {
  CHECK(run({"verify", "torsor", "--trials", "5"}).code == 0);
  CHECK(run({"verify", "dims", "--n", "2", "--trials", "1", "--rank-tol", "0.5"}).code == 1);
  CHECK(run({"verify", "nonsense"}).code == 2);
  CHECK(run({"verify"}).code == 2);
  CHECK(run({"verify", "dims", "--trials", "0"}).code == 2);
}

TEST_CASE("invariants of the bell state") {
  const Result r = run({"invariants"}, kBell);
  CHECK(r.code == 0);
  const auto p = nlohmann::json::parse(r.out)["p"];
  const std::vector<double> expected{0, 0, 0, 3, -1};
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(p[k][0].get<double>() == doctest::Approx(expected[k]));
    CHECK(p[k][1].get<double>() == 0.0);
  }
}

TEST_CASE("density matrix input") {
  const char* bell = R"({"n": 2, "matrix": [[[0.5,0],[0,0],[0,0],[0.5,0]], [[0,0],[0,0],[0,0],[0,0]],
                                            [[0,0],[0,0],[0,0],[0,0]], [[0.5,0],[0,0],[0,0],[0.5,0]]]})";
  const Result r = run({"bloch"}, bell);
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["components"]["XX"][0].get<double>() == doctest::Approx(1.0));
  CHECK(j["components"]["YY"][0].get<double>() == doctest::Approx(-1.0));

  const Result back = run({"bloch"}, kBell);
  CHECK(back.code == 0);
  CHECK(nlohmann::json::parse(back.out)["matrix"][0][3][0].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("reduce rejects a generic state") {
  const Result gen = run({"gen", "--n", "2", "--seed", "4"});
  REQUIRE(gen.code == 0);
  const Result r = run({"reduce"}, gen.out);
  CHECK(r.code == 1);
  CHECK(r.err.find("reduction-failed") != std::string::npos);
}

TEST_CASE("generated x-states reduce") {
  for (int seed = 1; seed <= 20; ++seed) {
    const Result gen = run({"gen", "--x-state", "--seed", std::to_string(seed)});
    REQUIRE(gen.code == 0);
    const Result r = run({"reduce"}, gen.out);
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["section"]["lambda"].size() == 3);
    CHECK(j["rotation"].size() == 2);
  }
}

TEST_CASE("quotient coordinates from the command line") {
  const char* fiber = R"({"n": 3, "components": {"ZII": [0.5, 0], "IZI": [0.7, 0.1], "IIZ": [0.3, 0],
                                                 "XIX": [1, 0], "XIY": [0.2, 0], "YIX": [0.4, 0], "YIY": [0.9, 0],
                                                 "IXX": [0.6, 0], "IXY": [0.1, 0.3], "IYX": [0.8, 0], "IYY": [0.5, 0]}})";
  const Result r = run({"quotient-coords"}, fiber);
  CHECK(r.code == 0);
  const auto q = nlohmann::json::parse(r.out)["quotient"];
  CHECK(q["t_tilde"].size() == 2);
  CHECK(q["s_tilde"].size() == 1);
  CHECK(run({"invariants", "--quotient"}, fiber).out == r.out);
  CHECK(run({"quotient-coords"}, kBell).code == 0);

  const Result gen = run({"gen", "--n", "3", "--seed", "2"});
  CHECK(run({"quotient-coords"}, gen.out).code == 1);
}

TEST_CASE("input errors exit with status 2") {
  CHECK(run({"invariants", "--input", "/nonexistent/state.json"}).code == 2);
  CHECK(run({"invariants"}, "{not json").code == 2);
  CHECK(run({"invariants"}, R"({"n": 2, "components": {"XQ": [1, 0]}})").code == 2);
  CHECK(run({"invariants"}, R"({"n": 2, "components": {"XXX": [1, 0]}})").code == 2);
  CHECK(run({"invariants"}, R"({"n": 2, "components": {"XX": "one"}})").code == 2);
  CHECK(run({"invariants"}, R"({"components": {}})").code == 2);
  CHECK(run({"invariants"}, R"({"n": 3, "components": {}})").code == 2);
  CHECK(run({"bloch"}, R"({"n": 1, "matrix": [[[1,0],[0,0]],[[0,0],[1,0]]]})").code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("output is reproducible and can go to a file") {
  const Result a = run({"gen", "--x-state", "--n", "3", "--seed", "9"});
  const Result b = run({"gen", "--x-state", "--n", "3", "--seed", "9"});
  CHECK(a.out == b.out);
  CHECK(a.out != run({"gen", "--x-state", "--n", "3", "--seed", "10"}).out);

  const std::string path = "cli_test_output.json";
  CHECK(run({"gen", "--x-state", "--seed", "9", "--output", path}).code == 0);
  std::ifstream file(path);
  const std::string written((std::istreambuf_iterator<char>(file)), {});
  CHECK(written == run({"gen", "--x-state", "--seed", "9"}).out);
  std::remove(path.c_str());

  CHECK(run({"gen", "--x-state", "--seed", "9", "--output", "/nonexistent/dir/out.json"}).code == 2);
}

TEST_CASE("verify reports are identical across thread counts") {
  const Result one = run({"verify", "all", "--seed", "3", "--trials", "3", "--json"});
  const Result four = run({"verify", "all", "--seed", "3", "--trials", "3", "--json", "--threads", "4"});
  CHECK(one.code == 0);
  CHECK(one.out == four.out);
}
