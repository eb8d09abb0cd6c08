#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "wzs/error.hpp"

using namespace wzs::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_args(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return "/tmp/wzs_test_cli_" + name; }

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = parse_config(R"({"group": "2,4", "weights": "aut", "length_bound": 9, "max_n": 50})");
  CHECK(cfg.group == "2,4");
  CHECK(cfg.weights == "aut");
  CHECK(cfg.length_bound == 9);
  CHECK(cfg.max_n == 50);
  CHECK(cfg.omega_cap == RunConfig{}.omega_cap);
  CHECK(parse_config("{}").group == RunConfig{}.group);

  try {
    parse_config("{\n  \"group\": \"3\",\n  \"bogus\": 1\n}");
    FAIL("unknown key accepted");
  } catch (const wzs::ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 3);
  }
  try {
    parse_config("{\n\"omega_cap\": -2}");
    FAIL("negative cap accepted");
  } catch (const wzs::ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 1);
  }
  try {
    parse_config("{\"group\": 3,\n  oops}");
    FAIL("malformed JSON accepted");
  } catch (const wzs::ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_config("[1, 2]"), wzs::ParseError);
  CHECK_THROWS_AS(parse_config(R"({"length_bound": "9"})"), wzs::ParseError);
  CHECK_THROWS_AS(parse_config(R"({"format": "xml"})"), wzs::ParseError);
  CHECK_THROWS_AS(parse_config(R"({"order_cap": 0})"), wzs::ParseError);
}

TEST_CASE("command examples") {
  auto atoms = run_args({"atoms", "--group", "3", "--weights", "pm"});
  CHECK(atoms.code == kOk);
  CHECK(atoms.out.find("atoms 8\nD 3\n") != std::string::npos);

  auto lengths = run_args({"lengths", "--group", "5", "--weights", "pm", "--seq", "[(1)^5,(4)^5]"});
  CHECK(lengths.code == kOk);
  CHECK(lengths.out.find("L {2,5}") != std::string::npos);

  auto check = run_args({"qform", "check", "--disc", "-23", "--n", "2"});
  CHECK(check.code == kOk);
  CHECK(check.out.find("not represented") != std::string::npos);

  auto inv = run_args({"invariants", "--group", "3", "--weights", "pm", "--length-bound", "12", "--omega-cap", "3"});
  CHECK(inv.code == kOk);
  CHECK(inv.out.find("bounds  length_bound 12  omega_cap 3") != std::string::npos);
  CHECK(inv.out.find("catenary@12 3 (exact)") != std::string::npos);
  CHECK(inv.out.find("4  {3,4,5,6}") != std::string::npos);
}

TEST_CASE("json output parses and carries bounds") {
  auto r = run_args({"invariants", "--group", "5", "--length-bound", "10", "--omega-cap", "2", "--format", "json"});
  REQUIRE(r.code == kOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["bounds"]["length_bound"] == 10);
  CHECK(j["davenport_large"] == 5);
  CHECK(j["davenport_small"] == 2);
  CHECK(j["omega"]["exact"] == false);
  CHECK(j["unions"][0]["matches"] == true);

  auto cs = run_args({"class-semigroup", "--group", "2,4", "--format", "json"});
  REQUIRE(cs.code == kOk);
  const auto k = nlohmann::json::parse(cs.out);
  CHECK(k["clifford"] == true);
  for (const auto& g : k["constituent_groups"]) CHECK(g["elements"].size() == 4);
}

TEST_CASE("sweep csv columns") {
  auto r = run_args({"qform", "sweep", "--disc", "-23", "--max-n", "10"});
  REQUIRE(r.code == kOk);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# discriminant -23", 0) == 0);
  std::getline(in, line);
  CHECK(line == "n,prime_signature,transfer_verdict,bruteforce_verdict,lengths_monoid,lengths_sequences");
  std::getline(in, line);
  CHECK(line == "1,1,1,1,\"{0}\",\"{0}\"");
  std::getline(in, line);
  CHECK(line == "2,2,0,0,,");
}

TEST_CASE("exit codes") {
  CHECK(run_args({}).code == kUsage);
  CHECK(run_args({"frobnicate"}).code == kUsage);
  CHECK(run_args({"atoms", "--group", "3", "--format", "csv"}).code == kUsage);
  CHECK(run_args({"atoms", "--group", "0"}).code == kUsage);
  CHECK(run_args({"lengths", "--group", "5", "--seq", "[(1)]"}).code == kUsage);
  CHECK(run_args({"lengths", "--group", "5", "--seq", "[(1"}).code == kUsage);
  CHECK(run_args({"qform", "classgroup", "--disc", "-22"}).code == kUsage);
  CHECK(run_args({"atoms", "--group", "300"}).code == kCapExceeded);
  CHECK(run_args({"atoms", "--group", "2,4", "--order-cap", "4"}).code == kCapExceeded);
  CHECK(run_args({"invariants", "--group", "3", "--length-bound", "64"}).code == kCapExceeded);
  CHECK(run_args({"atoms", "--help"}).code == kOk);
}

TEST_CASE("config file and flag precedence") {
  const auto path = temp_path("config.json");
  write_file(path, R"({"group": "5", "weights": "pm", "format": "json"})");
  auto r = run_args({"atoms", "--config", path});
  REQUIRE(r.code == kOk);
  CHECK(nlohmann::json::parse(r.out)["group"] == "5");
  auto flagged = run_args({"atoms", "--config", path, "--group", "3", "--format", "text"});
  CHECK(flagged.out.rfind("group 3 ", 0) == 0);

  write_file(path, "{\"group\": \"5\",\n \"colour\": 1}");
  auto bad = run_args({"atoms", "--config", path});
  CHECK(bad.code == kUsage);
  CHECK(bad.err.find("line 2, column 2") != std::string::npos);
  CHECK(run_args({"atoms", "--config", temp_path("missing.json")}).code == kUsage);
  std::remove(path.c_str());
}

TEST_CASE("--out writes the file instead of stdout") {
  const auto path = temp_path("out.txt");
  auto r = run_args({"atoms", "--group", "2", "--out", path});
  CHECK(r.code == kOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == run_args({"atoms", "--group", "2"}).out);
  std::remove(path.c_str());
}
