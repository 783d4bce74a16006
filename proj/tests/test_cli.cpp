#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "p2race/cli.hpp"

using p2race::run_cli;
using nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("landau csv") {
  const auto r = run({"landau", "--xs", "30,100", "-o", "csv"});
  CHECK(r.code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "x,count,residual");
  CHECK(lines[1].rfind("30,17,", 0) == 0);
  CHECK(lines[2].rfind("100,", 0) == 0);
}

TEST_CASE("race csv exact header and hand-checked row") {
  const auto r = run({"race", "--d", "-4", "--xs", "30", "-o", "csv"});
  CHECK(r.code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] ==
        "x,n_pp,n_pm,n_mp,n_mm,n_coprime,r_minus,r_plus,predicted_minus,"
        "cutoff,oscillation");
  CHECK(lines[1].rfind("30,1,1,1,3,6,2,", 0) == 0);
  // Eleven comma-separated fields.
  CHECK(std::count(lines[1].begin(), lines[1].end(), ',') == 10);
}

TEST_CASE("race json carries the tallies and d as a string") {
  const auto r = run({"race", "--d", "-4", "--xs", "30,100", "-o", "json"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["command"] == "race");
  CHECK(doc["d"] == "-4");
  CHECK(doc["d_validation"] == "fundamental");
  CHECK(doc["eta"] == -1);
  CHECK(doc["convention"] == "ordered_with_equal");
  REQUIRE(doc["rows"].size() == 2);
  CHECK(doc["rows"][0]["x"] == 30);
  CHECK(doc["rows"][0]["n_mm"] == 3);
  CHECK(doc["rows"][0]["n_coprime"] == 6);
  CHECK(doc["rows"][0]["r_minus"] == 2.0);
  CHECK(doc["curly_l"].contains("value"));
  CHECK(doc["curly_l"]["cutoff"] == 100);  // defaults to max of --xs
}

TEST_CASE("race honors eta and convention flags") {
  const auto r = run({"race", "--d", "-4", "--xs", "30", "--eta", "1",
                      "--convention", "unordered", "-o", "json"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["eta"] == 1);
  CHECK(doc["convention"] == "unordered");
  CHECK(doc["rows"][0]["n_mm"] == 2);
  CHECK(doc["rows"][0]["n_coprime"] == 4);
}

TEST_CASE("deterministic output across runs and thread counts") {
  const std::vector<std::string> base = {"race",  "--preset", "euler", "--xs",
                                         "10000", "-o",       "json"};
  auto with_threads = [&](const char* n) {
    auto args = base;
    args.push_back("--threads");
    args.push_back(n);
    return run(args);
  };
  const auto a = with_threads("1");
  const auto b = with_threads("8");
  const auto c = with_threads("1");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("lsum preset euler resolves to d = -163") {
  const auto r =
      run({"lsum", "--preset", "euler", "--cutoff", "1000", "-o", "json"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["d"] == "-163");
  CHECK(doc["curly_l"]["cutoff"] == 1000);
  CHECK(doc["e_chi"].contains("oscillation"));
  const double lo = doc["l1_interval"]["low"];
  const double hi = doc["l1_interval"]["high"];
  CHECK(lo < hi);
}

TEST_CASE("lsum table output mentions the quantities") {
  const auto r = run({"lsum", "--d", "-4", "--cutoff", "1000"});
  CHECK(r.code == 0);
  CHECK(r.out.find("curly_l") != std::string::npos);
  CHECK(r.out.find("e_chi") != std::string::npos);
}

TEST_CASE("l1 csv") {
  const auto r = run({"l1", "--d", "-4", "--cutoff", "100000", "-o", "csv"});
  CHECK(r.code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "quantity,value,cutoff,oscillation");
  CHECK(lines[1].rfind("l1,0.785", 0) == 0);  // pi/4 = 0.78539...
}

TEST_CASE("search json finds the classical low conductor") {
  const auto r = run({"search", "--D", "200", "--cutoff", "10000", "--top",
                      "3", "-o", "json"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["bound"] == 200);
  CHECK(doc["scanned"] == 122);  // fundamental discriminants with |d| <= 200
  REQUIRE(doc["most_negative"].size() == 3);
  CHECK(doc["most_negative"][0]["d"] == -163);
  CHECK(!doc.contains("tail"));
}

TEST_CASE("search tail block appears with --tau") {
  const auto r = run({"search", "--D", "50", "--cutoff", "1000", "--tau", "0",
                      "--side", "le", "-o", "json"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  REQUIRE(doc.contains("tail"));
  CHECK(doc["tail"]["side"] == "le");
  const double prop = doc["tail"]["proportion"];
  CHECK(prop >= 0.0);
  CHECK(prop <= 1.0);
}

TEST_CASE("hl preset euler") {
  const auto r = run({"hl", "--preset", "euler", "--n", "10", "--cutoff",
                      "100", "-o", "json"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["a"] == "41");
  CHECK(doc["delta"] == "-163");
  CHECK(doc["prime_count"] == 11);  // x = 0..10 all give primes
  CHECK(doc["ratio"].is_number());
}

TEST_CASE("hl csv") {
  const auto r = run({"hl", "--A", "41", "--n", "39", "--cutoff", "1000", "-o",
                      "csv"});
  CHECK(r.code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "a,n,prime_count,li,hl_value,hl_cutoff,hl_oscillation,ratio");
  CHECK(lines[1].rfind("41,39,40,", 0) == 0);
}

TEST_CASE("prime cache is written, reused, and rebuilt when corrupt") {
  const auto path = std::filesystem::temp_directory_path() / "p2race_cli_cache.bin";
  std::filesystem::remove(path);
  const std::vector<std::string> args = {"l1",       "--d",          "-4",
                                         "--cutoff", "10000",        "-o",
                                         "csv",      "--prime-cache", path.string()};
  const auto first = run(args);
  CHECK(first.code == 0);
  CHECK(std::filesystem::exists(path));
  CHECK(first.err.find("wrote") != std::string::npos);
  const auto second = run(args);
  CHECK(second.code == 0);
  CHECK(second.out == first.out);
  CHECK(second.err.find("loaded") != std::string::npos);
  // Corrupt the cache; the run must recover by rebuilding.
  std::filesystem::resize_file(path, 6);
  const auto third = run(args);
  CHECK(third.code == 0);
  CHECK(third.out == first.out);
  std::filesystem::remove(path);
}

TEST_CASE("P2RACE_CACHE environment variable is honored") {
  const auto path =
      std::filesystem::temp_directory_path() / "p2race_cli_env_cache.bin";
  std::filesystem::remove(path);
  setenv("P2RACE_CACHE", path.string().c_str(), 1);
  const auto r = run({"l1", "--d", "-4", "--cutoff", "1000", "-o", "csv"});
  unsetenv("P2RACE_CACHE");
  CHECK(r.code == 0);
  CHECK(std::filesystem::exists(path));
  std::filesystem::remove(path);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({"race", "--xs", "30"}).code == 2);          // no --d/--preset
  CHECK(run({"race", "--d", "9", "--xs", "30"}).code == 2);  // not fundamental
  CHECK(run({"race", "--d", "abc", "--xs", "30"}).code == 2);
  CHECK(run({"race", "--d", "-4"}).code == 2);           // missing --xs
  CHECK(run({"race", "--d", "-4", "--xs", "30", "--eta", "0"}).code == 2);
  CHECK(run({"race", "--d", "-4", "--preset", "euler", "--xs", "30"}).code ==
        2);  // mutually exclusive
  CHECK(run({"landau", "--xs", "30", "--sieve-limit", "10"}).code == 2);
  CHECK(run({"search", "--D", "2", "--cutoff", "100"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"race", "--d", "-4", "--xs", "30", "--output", "yaml"}).code == 2);
  const auto bad = run({"race", "--d", "9", "--xs", "30"});
  CHECK(bad.err.find("fundamental discriminant") != std::string::npos);
  CHECK(bad.out.empty());
}

TEST_CASE("runtime failures exit 1") {
  // x too small for any coprime semiprime: the ratio is undefined.
  CHECK(run({"race", "--d", "-4", "--xs", "5"}).code == 1);
  // Singular logarithmic integral.
  CHECK(run({"hl", "--A", "1", "--n", "10", "--cutoff", "100"}).code == 1);
}

TEST_CASE("help exits 0") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("race") != std::string::npos);
  CHECK(r.out.find("landau") != std::string::npos);
}
