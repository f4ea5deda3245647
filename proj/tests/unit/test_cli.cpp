#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "beurling/cli.hpp"
#include "beurling/systems.hpp"

using namespace beurling;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "beurling_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

const std::string kData = BEURLING_TEST_DATA;
const std::string kPrimes = BEURLING_PRIMES_FILE;

}  // namespace

TEST_CASE("sha256 test vectors") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("gen on the ordinary primes file gives every integer up to 1000") {
  const Run r = run({"gen", "--primes-file", kPrimes, "--limit", "1000"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["result"]["N"] == 1000);
  CHECK(doc["result"]["pi"] == 168);
  CHECK(doc["manifest"]["command"] == "gen");
  CHECK(doc["manifest"]["input_digests"][kPrimes] == file_sha256(kPrimes));
  const IntegerSnapshot snap = snapshot_from_json(doc["result"]["snapshot"]);
  REQUIRE(snap.size() == 1000);
  for (std::size_t i = 0; i < snap.size(); ++i) CHECK(snap.entry(i).value.mid() == double(i + 1));
}

TEST_CASE("sample reproduces the seed 42 golden primes") {
  const Run r = run({"sample", "--seed", "42", "--count", "100", "--sweep", "20,2,4"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["manifest"]["seed"] == "42");
  CHECK(doc["manifest"]["generator"] == "mt19937_64/53bit");
  const PrimeSystem s = system_from_json(doc["result"]["system"]);
  const PrimeSystem golden = read_primes_file(kData + "/sample_seed42_n100.txt");
  CHECK(s.decimals() == golden.decimals());
}

TEST_CASE("replay reproduces JSON and CSV artifacts byte for byte") {
  const fs::path a = scratch("perturb.json"), b = scratch("perturb_replay.json");
  REQUIRE(run({"perturb", "--classical", "10", "--out", a.string()}).code == 0);
  const Run again = run({"replay", "--manifest", a.string(), "--out", b.string()});
  REQUIRE(again.code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(again.out.find(sha256_hex(slurp(a))) != std::string::npos);

  const fs::path c = scratch("bc.csv"), d = scratch("bc_replay.csv");
  REQUIRE(run({"conditions", "--classical", "30", "--limit", "100", "--format", "csv", "--out", c.string()})
              .code == 0);
  CHECK(slurp(c).rfind("# manifest {", 0) == 0);
  REQUIRE(run({"replay", "--manifest", c.string(), "--out", d.string()}).code == 0);
  CHECK(slurp(c) == slurp(d));
  CHECK(read_manifest(c.string())["parameters"]["condition"] == "BC");
}

TEST_CASE("replay refuses a changed input file") {
  const fs::path primes = scratch("small.txt"), art = scratch("small.json");
  write(primes, "2\n3\n5\n");
  REQUIRE(run({"gen", "--primes-file", primes.string(), "--limit", "50", "--out", art.string()}).code == 0);
  write(primes, "2\n3\n7\n");
  CHECK(run({"replay", "--manifest", art.string()}).code == 2);
}

TEST_CASE("exit status") {
  CHECK(run({}).code == 2);
  CHECK(run({"gen", "--classical", "10", "--bogus", "1"}).code == 2);
  CHECK(run({"gen", "--limit", "10"}).code == 2);
  CHECK(run({"gen", "--classical", "ten"}).code == 2);
  CHECK(run({"conditions", "--classical", "10", "--condition", "XC"}).code == 2);
  CHECK(run({"gen", "--classical", "10", "--format", "xml"}).code == 2);

  const fs::path bad = scratch("bad.txt");
  write(bad, "# not increasing\n3\n2\n");
  CHECK(run({"gen", "--primes-file", bad.string()}).code == 2);
  write(bad, "2\nfoo\n");
  CHECK(run({"gen", "--primes-file", bad.string()}).code == 2);

  // 4 = 2 * 2 collides with the prime 4: the ordering is undecidable.
  const fs::path coll = scratch("collide.txt");
  write(coll, "2\n4\n");
  const Run r = run({"gen", "--primes-file", coll.string(), "--limit", "20", "--precision-cap", "256"});
  CHECK(r.code == 3);
  CHECK_FALSE(r.err.empty());

  CHECK(run({"perturb", "--classical", "10", "--sigma-inf", "1.5"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("dioph reports the exact ratio without an irrationality estimate") {
  const Run r = run({"dioph", "--target", "3/2", "--limit", "100"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["result"]["best"][0]["exact"] == true);
  CHECK(doc["result"]["mu"].is_null());
  CHECK(doc["result"].contains("mu_unavailable"));
}
