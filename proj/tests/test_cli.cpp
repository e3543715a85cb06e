#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#ifndef SYMBELL_CLI_PATH
#define SYMBELL_CLI_PATH "symbell"
#endif

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CliResult run_cli(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() / "symbell_cli_test";
  fs::create_directories(dir);
  const fs::path out_path = dir / ("out" + std::to_string(counter));
  const fs::path err_path = dir / ("err" + std::to_string(counter));
  ++counter;

  std::ostringstream cmd;
  if (!env.empty()) cmd << env << " ";
  cmd << SYMBELL_CLI_PATH << " " << args << " >" << out_path << " 2>" << err_path;
  const int status = std::system(cmd.str().c_str());

  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  return result;
}

}  // namespace

TEST_CASE("visibility writes a parseable inequality file") {
  auto res = run_cli("visibility -N 2 -m 3 --threads 1");
  REQUIRE(res.exit_code == 0);
  CHECK(res.out.find("coeffs=2 3") != std::string::npos);
  CHECK(res.out.find("L=12") != std::string::npos);
  CHECK(res.out.find("v_exact=4/5") != std::string::npos);
  CHECK(res.out.find("certified=EXACT") != std::string::npos);
}

TEST_CASE("visibility --json is machine readable") {
  auto res = run_cli("visibility -N 2 -m 3 --threads 1 --json");
  REQUIRE(res.exit_code == 0);
  auto j = nlohmann::json::parse(res.out);
  CHECK(j["L"] == "12");
  CHECK(j["v"].get<double>() == doctest::Approx(0.8));
  CHECK(j["facet"] == true);
  REQUIRE(j["local_model"].size() == 2);
}

TEST_CASE("local-bound verifies a written file and flags tampering") {
  const fs::path dir = fs::temp_directory_path() / "symbell_cli_test";
  fs::create_directories(dir);
  const fs::path ineq = dir / "n2m3.ineq";
  auto write = run_cli("visibility -N 2 -m 3 --threads 1 -o " + ineq.string());
  REQUIRE(write.exit_code == 0);

  auto verify = run_cli("local-bound -i " + ineq.string() + " --threads 1");
  CHECK(verify.exit_code == 0);
  CHECK(verify.out.find("match=yes") != std::string::npos);

  auto brute = run_cli("local-bound -i " + ineq.string() + " --brute-force");
  CHECK(brute.exit_code == 0);
  CHECK(brute.out.find("match=yes") != std::string::npos);

  // tamper with the bound: recomputation must disagree -> exit 2
  std::string text = slurp(ineq);
  const auto pos = text.find("L=12");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 4, "L=13");
  std::ofstream(ineq, std::ios::trunc) << text;
  auto tampered = run_cli("local-bound -i " + ineq.string() + " --threads 1");
  CHECK(tampered.exit_code == 2);
}

TEST_CASE("vertices and facets commands") {
  auto vert = run_cli("vertices -N 3 -m 3 --json");
  REQUIRE(vert.exit_code == 0);
  CHECK(nlohmann::json::parse(vert.out)["count"] == 10);

  auto fac = run_cli("facets -N 2 -m 3");
  REQUIRE(fac.exit_code == 0);
  CHECK(fac.out.find("2 3 <= 12") != std::string::npos);
  CHECK(fac.out.find("cross_polytope=yes") != std::string::npos);
}

TEST_CASE("necklaces command counts and lists") {
  auto res = run_cli("necklaces -m 10 --json");
  REQUIRE(res.exit_code == 0);
  auto j = nlohmann::json::parse(res.out);
  CHECK(j["count"] == "52");
  CHECK(j["representatives"].size() == 52);
}

TEST_CASE("m4 command") {
  auto res = run_cli("m4 --parties 17");
  REQUIRE(res.exit_code == 0);
  CHECK(res.out.find("L=5705728") != std::string::npos);

  auto table = run_cli("m4 --table 12");
  REQUIRE(table.exit_code == 0);
  CHECK(table.out.find("recursions_and_antidiagonals=ok") != std::string::npos);
}

TEST_CASE("derived-quantity commands") {
  auto eff = run_cli("efficiency -v 0.35355 -N 4 --json");
  REQUIRE(eff.exit_code == 0);
  CHECK(nlohmann::json::parse(eff.out)["eta_crit"].get<double>() ==
        doctest::Approx(0.7706).epsilon(1e-3));

  auto xy = run_cli("xy-bound -v 0.49132 -m 224 -N 3 --json");
  REQUIRE(xy.exit_code == 0);
  CHECK(nlohmann::json::parse(xy.out)["xy_lower_bound"].get<double>() ==
        doctest::Approx(0.49129).epsilon(1e-4));

  auto act = run_cli("activation -v 0.02301 -N 10 --json");
  REQUIRE(act.exit_code == 0);
  CHECK(nlohmann::json::parse(act.out)["activated"] == true);
}

TEST_CASE("reproduce exit codes: success, mismatch-free tables, budget") {
  CHECK(run_cli("reproduce --table I").exit_code == 0);
  CHECK(run_cli("reproduce --table III").exit_code == 0);
  CHECK(run_cli("reproduce --table Lij").exit_code == 0);
  // zero-budget run: nothing checked -> exit 3
  CHECK(run_cli("reproduce --table V --max-cost 0").exit_code == 3);
  CHECK(run_cli("reproduce --table bogus").exit_code == 1);
}

TEST_CASE("reproduce report is byte-identical at 1 and 8 workers") {
  auto a = run_cli("reproduce --table V --max-cost 60 --threads 1");
  auto b = run_cli("reproduce --table V --max-cost 60 --threads 8");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(a.out == b.out);

  auto c = run_cli("reproduce --table II --max-cost 2000 --threads 1");
  auto d = run_cli("reproduce --table II --max-cost 2000 --threads 8");
  REQUIRE(c.exit_code == 0);
  CHECK(c.out == d.out);
}

TEST_CASE("run cache replays visibility byte-identically") {
  const fs::path dir = fs::temp_directory_path() / "symbell_cli_cache";
  fs::remove_all(dir);
  const std::string env = "SYMBELL_CACHE_DIR=" + dir.string();
  auto first = run_cli("visibility -N 3 -m 3 --threads 1", env);
  REQUIRE(first.exit_code == 0);
  auto second = run_cli("visibility -N 3 -m 3 --threads 1", env);
  REQUIRE(second.exit_code == 0);
  CHECK(second.err.find("cache hit") != std::string::npos);
  CHECK(first.out == second.out);
  fs::remove_all(dir);
}

TEST_CASE("budget exhaustion maps to exit 3") {
  auto res = run_cli("visibility -N 5 -m 10 --lmo exact --budget 100 --threads 1");
  CHECK(res.exit_code == 3);
}
