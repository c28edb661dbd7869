#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sl2grow/app/cli.hpp"
#include "sl2grow/app/json.hpp"
#include "sl2grow/io.hpp"

using namespace sl2grow;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = app::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("sl2grow_cli_test_" + name);
}

}  // namespace

TEST_CASE("analyze the optimal set") {
  const Run r = run({"--json", "analyze", "--p", "17", "--set", "optimal"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("sizeS") == 64);
  CHECK(j.at("sizeS3") == 224);
  CHECK(j.at("generates") == true);
  const GrowthReport back = app::growth_report_from_json(j);
  CHECK(back.sizeS2 == 128);
  // Global flags may also follow the verb.
  CHECK(run({"analyze", "--p", "17", "--set", "optimal", "--json"}).out == r.out);
}

TEST_CASE("written sets read back identically") {
  const auto path = temp_path("roundtrip.txt");
  const Run r = run({"analyze", "--p", "17", "--set", "optimal", "--write-set", path.string()});
  CHECK(r.code == 0);
  const ElementSet s = read_set_file(path.string());
  CHECK(s.words() == optimal_set(GroupTable::create(17)).words());
  const Run again = run({"analyze", "--set", path.string()});
  CHECK(again.code == 0);
  CHECK(again.out == r.out);
  std::filesystem::remove(path);
}

TEST_CASE("non-symmetric input fails the check") {
  const auto path = temp_path("asym.txt");
  {
    std::ofstream f(path);
    f << "p=5\n[[1,0],[0,1]]\n[[1,1],[0,1]]\n";
  }
  const Run r = run({"analyze", "--set", path.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("SymmetryViolation") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"analyze", "--p", "17", "--set", "optimal", "--bogus"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"catalog", "--p", "15"}).code == 2);
  CHECK(run({"analyze", "--set", "optimal"}).code == 2);
  CHECK(run({"analyze", "--set", "/nonexistent/set.txt"}).code == 2);
  CHECK(run({"analyze", "--p", "13", "--set", "optimal"}).code == 2);
  const Run big = run({"analyze", "--p", "113", "--set", "optimal"});
  CHECK(big.code == 2);
  CHECK(big.err.find("--allow-large") != std::string::npos);
  CHECK(run({"--allow-large", "analyze", "--p", "113", "--set", "optimal"}).code == 0);
  CHECK(run({"perturb", "--kind", "twist"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("catalog lists realizable kinds") {
  const Run r = run({"catalog", "--p", "13"});
  CHECK(r.code == 0);
  for (const char* line : {"upper_triangular", "156", "unipotent", "qr_index2", "78", "gen_quaternion:24"}) {
    CHECK(r.out.find(line) != std::string::npos);
  }
  CHECK(r.out.find("two_dot_S4") == std::string::npos);
  const Run j = run({"--json", "catalog", "--p", "17"});
  const auto parsed = nlohmann::json::parse(j.out);
  bool found = false;
  for (const auto& row : parsed.at("subgroups")) {
    if (row.at("kind") == "two_dot_S4") {
      found = true;
      CHECK(row.at("order") == 48);
    }
  }
  CHECK(found);
}

TEST_CASE("construct") {
  const Run r = run({"--json", "construct", "--kind", "two_dot_S4", "--p", "17", "--with-x", "auto", "--coset-core"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("subgroup").at("order") == 48);
  CHECK(j.at("c") == 3);
  CHECK(j.at("report").at("sizeS3") == 224);
  const Run plain = run({"construct", "--kind", "cyclic:4", "--p", "13"});
  CHECK(plain.code == 0);
  CHECK(plain.out.find("order") != std::string::npos);
  const Run explicit_x =
      run({"--json", "construct", "--kind", "qr_index2", "--p", "13", "--with-x", "[[1,-2],[1,-1]]"});
  CHECK(explicit_x.code == 0);
  CHECK(nlohmann::json::parse(explicit_x.out).at("report").at("sizeS") == 80);
  CHECK(run({"construct", "--kind", "cyclic:4", "--p", "13", "--coset-core"}).code == 2);
  CHECK(run({"construct", "--kind", "two_dot_S4", "--p", "13"}).code == 2);
}

TEST_CASE("search and perturb verbs") {
  const auto path = temp_path("search.json");
  const Run s = run({"--json", "search", "--p", "3", "--out", path.string()});
  CHECK(s.code == 0);
  const auto j = nlohmann::json::parse(s.out);
  CHECK(j.contains("best_delta"));
  CHECK(j.at("timing").contains("wall_time"));
  CHECK(!j.at("witnesses").empty());
  const ElementSet w = parse_set(j.at("witnesses").at(0).get<std::string>());
  CHECK(w.table().prime() == 3);
  std::ifstream f(path);
  CHECK(nlohmann::json::parse(f).at("best_delta") == j.at("best_delta"));
  std::filesystem::remove(path);

  const Run p = run({"--json", "perturb", "--kind", "remove"});
  CHECK(p.code == 0);
  const auto pj = nlohmann::json::parse(p.out);
  CHECK(pj.at("cube_invariant") == true);
  CHECK(pj.at("trials") == 32);
  const Run sw = run({"perturb", "--kind", "swap", "--samples", "50", "--seed", "3", "--workers", "2"});
  CHECK(sw.code == 0);
}

TEST_CASE("verify-all output is reproducible") {
  const Run a = run({"--json", "verify-all", "--only", "5", "--only", "2"});
  const Run b = run({"--json", "verify-all", "--only", "2", "--only", "5"});
  CHECK(a.code == 0);
  auto ja = nlohmann::json::parse(a.out);
  auto jb = nlohmann::json::parse(b.out);
  CHECK(ja.at("checks").size() == 2);
  ja.erase("timing");
  jb.erase("timing");
  CHECK(ja == jb);
  const Run table = run({"verify-all", "--only", "5"});
  CHECK(table.out.find("PASS") != std::string::npos);
  CHECK(table.out == run({"verify-all", "--only", "5"}).out);
}

TEST_CASE("worker count from the environment") {
  ::setenv("SL2GROW_WORKERS", "0", 1);
  CHECK(run({"perturb", "--kind", "remove"}).code == 2);
  ::setenv("SL2GROW_WORKERS", "two", 1);
  CHECK(run({"perturb", "--kind", "remove"}).code == 2);
  ::setenv("SL2GROW_WORKERS", "3", 1);
  CHECK(run({"search", "--p", "3"}).err.find("3 workers") != std::string::npos);
  CHECK(run({"search", "--p", "3", "--workers", "1"}).err.find("1 workers") != std::string::npos);
  CHECK(run({"perturb", "--kind", "remove"}).code == 0);
  ::unsetenv("SL2GROW_WORKERS");
}
