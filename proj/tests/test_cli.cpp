#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <sstream>

#include <unistd.h>

#include "cli/commands.hpp"
#include "cli/verify.hpp"

using namespace gdet;
using namespace gdet::cli;

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

std::filesystem::path temp_dir(const std::string& tag) {
  auto d = std::filesystem::temp_directory_path() / ("gdet_cli_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("terms table") {
  const auto r = run({"--quiet", "--format", "csv", "terms", "--n", "5", "--k-max", "10"});
  CHECK(r.code == 0);
  CHECK(r.out == "n\\k,1,2,3,4,5,6,7,8,9,10\n5,26,201,776,2126,4751,9276,16451,27151,42376,63251\n");
  const auto one = run({"--quiet", "--format", "csv", "terms", "--n", "1", "--k-max", "3"});
  CHECK(one.out == "n\\k,1,2,3\n1,1,1,1\n");
  const auto json = nlohmann::json::parse(run({"--quiet", "--format", "json", "terms", "--n", "2,3"}).out);
  REQUIRE(json.size() == 2);
  CHECK(json[1]["n"] == 3);
  CHECK(json[1]["value"] == 4);
  CHECK(json[1]["exact"] == true);
}

TEST_CASE("modprime cells are labelled") {
  const auto r = run({"--quiet", "--mode", "modprime", "--format", "csv", "terms", "--n", "4", "--k-max", "2"});
  CHECK(r.out == "n\\k,1,2\n4,~10,~43\n");
}

TEST_CASE("group-terms") {
  const auto c8 = run({"--quiet", "--format", "csv", "group-terms", "--name", "C_8"});
  CHECK(c8.code == 0);
  CHECK(c8.out.find(",C_8,8,1,810,1,character,") != std::string::npos);
  const auto c2 = run({"--quiet", "group-terms", "--name", "C_2"});
  CHECK(c2.out.find("= 2 ") != std::string::npos);
  const auto q8 = run({"--quiet", "--format", "json", "group-terms", "--name", "Q_8"});
  CHECK(nlohmann::json::parse(q8.out)[0]["method"] == "subset-dp");
  CHECK(run({"group-terms", "--name", "nope"}).code == 2);
  CHECK(run({"group-terms", "--gap", "16,99"}).code == 2);
}

TEST_CASE("partitions table") {
  const auto r = run({"--format", "csv", "partitions", "--n-max", "9", "--k-max", "10"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\n1,1,1,1,1,1,1,1,1,1,1\n") != std::string::npos);
  CHECK(r.out.find("\n9,2704,173593,2615104,19692535,98480332,375677659,1182125128,3220837534,7847250409,"
                   "17485161178\n") != std::string::npos);
  const auto j = nlohmann::json::parse(run({"--format", "json", "partitions", "--n", "14", "--k-max", "2"}).out);
  CHECK(j[1]["value"] == "1258579654");
  CHECK(j[1]["method"] == "formula");
}

TEST_CASE("check and scan") {
  const auto r = run({"check", "--p", "16843"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Wolstenholme prime: yes") != std::string::npos);
  CHECK(run({"check", "--p", "15"}).code == 2);
  const auto s = run({"--quiet", "--format", "csv", "scan", "--lo", "16800", "--hi", "16900"});
  CHECK(s.code == 0);
  CHECK(s.out.find(",16843,0,") != std::string::npos);
}

TEST_CASE("verify suites") {
  CHECK(run({"verify", "oracle"}).code == 0);
  const auto q = run({"--quiet", "verify", "questions", "--n-max", "6", "--k-max", "2"});
  CHECK(q.code == 0);
  CHECK(q.out.find("FAIL") == std::string::npos);
  CHECK(run({"--quiet", "verify", "crossval", "--n-max", "5"}).code == 0);
  CHECK(run({"verify", "bogus"}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"--budget", "1000", "terms", "--n", "3"}).code == 2);
  CHECK(run({"terms", "--n", "17"}).code == 2);
  CHECK(run({"--format", "xml", "catalog"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("budget exhaustion keeps the completed prefix") {
  const auto r = run({"--quiet", "--budget", "64M", "--format", "csv", "terms", "--n", "7", "--k-max", "8"});
  CHECK(r.code == 3);
  CHECK(r.out.find("\n7,246,5538,42288,") != std::string::npos);
  CHECK(r.out.find(",*") != std::string::npos);
}

TEST_CASE("warm cache performs no multiplications") {
  const auto dir = temp_dir("cache");
  RunConfig config;
  config.cache_dir = dir;
  config.quiet = true;
  ComputeStats cold, warm;
  const auto first = compute_terms_row(make_cyclic(6), 4, config, &cold);
  const auto second = compute_terms_row(make_cyclic(6), 4, config, &warm);
  CHECK(cold.multiplications > 0);
  CHECK(warm.multiplications == 0);
  std::ostringstream a, b;
  write_terms_table(a, {first}, OutputFormat::Csv);
  write_terms_table(b, {second}, OutputFormat::Csv);
  CHECK(a.str() == b.str());
  CHECK(a.str() == "n\\k,1,2,3,4\n6,68,984,5566,19751\n");

  // extending the row resumes from the cached top power
  ComputeStats more;
  const auto third = compute_terms_row(make_cyclic(6), 5, config, &more);
  CHECK(more.multiplications == 1);
  CHECK(third.cells[4]->value == 53994);

  const auto cli = run({"--quiet", "--cache", dir.string(), "--format", "csv", "terms", "--n", "6", "--k-max", "5"});
  CHECK(cli.out == "n\\k,1,2,3,4,5\n6,68,984,5566,19751,53994\n");
  std::filesystem::remove_all(dir);
}

TEST_CASE("catalog") {
  const auto r = run({"--format", "csv", "catalog"});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 15);
  CHECK(nlohmann::json::parse(run({"--format", "json", "catalog"}).out).size() == 14);
}

TEST_CASE("prime powers") {
  CHECK(is_prime_power(1));
  CHECK(is_prime_power(8));
  CHECK(is_prime_power(9));
  CHECK_FALSE(is_prime_power(6));
  CHECK_FALSE(is_prime_power(12));
}
