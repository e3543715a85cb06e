#include <doctest.h>

#include <cstdlib>
#include <filesystem>

#include "symbell/fwsolver.hpp"
#include "symbell/ineqfile.hpp"

using namespace symbell;

namespace {

InequalityFile sample_file() {
  InequalityFile file;
  file.n_parties = 5;
  file.n_inputs = 10;
  file.coeffs = {"988", "0", "575", "0", "-575"};
  file.local_bound = "3280000";
  file.quantum_value = 15630000.000000477;
  file.quantum_expr = "10000*(988)*cos(0*pi/10) + 20000*(575)*cos(2*pi/10) + 20000*(-575)*cos(4*pi/10)";
  file.visibility = 0.20985284708893154;
  file.certified_exact = true;
  file.seed = 7;
  file.config_hash = "00000000deadbeef";
  file.tool_version = "0.1.0";
  return file;
}

}  // namespace

TEST_CASE("write/parse round trip is the identity, byte for byte") {
  const InequalityFile file = sample_file();
  const std::string text = write_inequality(file);
  const InequalityFile parsed = parse_inequality(text);
  CHECK(write_inequality(parsed) == text);

  CHECK(parsed.n_parties == file.n_parties);
  CHECK(parsed.n_inputs == file.n_inputs);
  CHECK(parsed.coeffs == file.coeffs);
  CHECK(parsed.local_bound == file.local_bound);
  CHECK(parsed.quantum_value == file.quantum_value);  // 17 digits round-trip
  CHECK(parsed.visibility == file.visibility);
  CHECK(parsed.certified_exact == file.certified_exact);
  CHECK(parsed.seed == file.seed);
}

TEST_CASE("certificates serialize with exact fractions when expressible") {
  FWConfig config;
  config.threads = 1;
  auto res = visibility_search(ScenarioParams(2, 3), config);
  REQUIRE(res.converged);
  InequalityFile file = InequalityFile::from_certificate(res.certificate, 1, "cafe");
  CHECK(file.coeffs == std::vector<std::string>{"2", "3"});
  CHECK(file.local_bound == "12");
  CHECK(file.visibility_exact == "4/5");
  const ReducedInt coeffs = file.coefficients();
  CHECK(coeffs.e == std::vector<BigInt>{BigInt(2), BigInt(3)});
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS((void)parse_inequality("N=2\nm=3\n"), std::invalid_argument);  // no format
  CHECK_THROWS_AS((void)parse_inequality("format=1\nbogus line\n"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_inequality("format=1\ncertified=MAYBE\n"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_inequality("format=1\nunknown_key=1\n"), std::invalid_argument);
}

TEST_CASE("run cache stores and replays byte-identical payloads") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "symbell_cache_test";
  fs::remove_all(dir);
  RunCache cache(dir.string());
  REQUIRE(cache.enabled());

  const std::string key = cache.key("visibility", "N=2,m=3", "ff00");
  CHECK(cache.key("visibility", "N=2,m=3", "ff00") == key);
  CHECK(cache.key("visibility", "N=2,m=4", "ff00") != key);
  CHECK_FALSE(cache.load(key).has_value());

  const std::string payload = write_inequality(sample_file());
  cache.store(key, payload);
  auto loaded = cache.load(key);
  REQUIRE(loaded.has_value());
  CHECK(*loaded == payload);
  fs::remove_all(dir);
}

TEST_CASE("cache is disabled without a directory") {
  RunCache cache(std::string{});
  CHECK_FALSE(cache.enabled());
  CHECK_FALSE(cache.load("abc").has_value());
  cache.store("abc", "payload");  // no-op, must not throw
}
