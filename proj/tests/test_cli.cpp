#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "poisson/cli.hpp"

using nlohmann::json;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = poisson::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// Runs the installed binary through the shell; stderr is discarded.
Run run_process(const std::string& args) {
  const std::string cmd =
      std::string(POISSON_VERIFY_EXE) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) {
    out.append(buf.data(), n);
  }
  const int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  return {WEXITSTATUS(status), out, ""};
}

const std::set<std::string> kOutcomeKeys{
    "identity",     "variant",  "params",          "lhs",
    "rhs",          "abs_residual", "rel_residual", "status",
    "expected_status", "elapsed_ms", "message"};

std::set<std::string> keys_of(const json& j) {
  std::set<std::string> k;
  for (auto it = j.begin(); it != j.end(); ++it) k.insert(it.key());
  return k;
}

}  // namespace

TEST_CASE("verify exit codes", "[cli]") {
  CHECK(run({"verify", "--id", "eq16"}).code == 0);
  CHECK(run({"verify", "--id", "eq13", "--variant", "as_printed"}).code == 0);
  CHECK(run({"verify", "--id", "eq13", "--strict"}).code == 1);
  CHECK(run({"verify", "--id", "eq16", "--strict"}).code == 0);
  CHECK(run({"verify", "--id", "nosuch"}).code == 2);
  CHECK(run({"verify", "--id", "eq16", "--param", "n=99"}).code == 2);
  CHECK(run({"verify", "--id", "eq16", "--param", "n=1.5"}).code == 2);
  CHECK(run({"verify", "--id", "eq16", "--param", "zz=1"}).code == 2);
  CHECK(run({"verify", "--id", "eq16", "--variant", "nosuch"}).code == 2);
  CHECK(run({"verify", "--id", "eq16", "--grid", "--param", "n=1"}).code == 2);
  CHECK(run({"verify", "--tol", "-1"}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("tolerance override flips a pass to a mismatch", "[cli]") {
  // tight tolerances turn eq16 into a fail, which differs from expectation
  const auto r = run({"verify", "--id", "eq16", "--tol", "1e-30", "--rel-tol",
                      "1e-30"});
  CHECK(r.code == 1);
  // loose tolerances make the printed eq13 pass, also a mismatch
  CHECK(run({"verify", "--id", "eq13", "--variant", "as_printed", "--tol",
             "0.5"})
            .code == 1);
}

TEST_CASE("unknown id lists valid ids", "[cli]") {
  const auto r = run({"verify", "--id", "nosuch"});
  CHECK(r.err.find("eq16") != std::string::npos);
}

TEST_CASE("JSON report schema", "[cli][json]") {
  const auto r = run({"verify", "--id", "eq16", "--param", "n=1", "--format",
                      "json"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  const auto& o = j[0];
  CHECK(keys_of(o) == kOutcomeKeys);
  CHECK(o["identity"] == "eq16");
  CHECK(o["variant"] == "as_printed");
  CHECK(o["status"] == "pass");
  CHECK(o["expected_status"] == "pass");
  CHECK(o["params"]["n"] == 1.0);
  CHECK(o["elapsed_ms"].is_number());
  CHECK_THAT(o["lhs"].get<double>(), WithinRel(1.0 / 504.0, 1e-13));
  CHECK(o["abs_residual"].get<double>() < 1e-12);

  const auto quiet = json::parse(
      run({"verify", "--id", "eq16", "--format", "json", "--no-timing"}).out);
  for (const auto& x : quiet) CHECK(x["elapsed_ms"].is_null());

  // output survives a parse/dump round trip unchanged
  const auto again = json::parse(quiet.dump());
  CHECK(again == quiet);
}

TEST_CASE("JSON schema is stable across the full grid", "[cli][json]") {
  const auto r = run({"verify", "--grid", "--format", "json", "--no-timing"});
  const auto j = json::parse(r.out);
  REQUIRE(j.size() > 40);
  const std::set<std::string> statuses{"pass", "fail", "error", "unverified"};
  for (const auto& o : j) {
    CHECK(keys_of(o) == kOutcomeKeys);
    CHECK(statuses.count(o["status"].get<std::string>()) == 1);
    CHECK(statuses.count(o["expected_status"].get<std::string>()) == 1);
    CHECK(o["params"].is_object());
  }
}

TEST_CASE("--parallel does not change the output", "[cli][concurrency]") {
  const std::vector<std::string> base{"verify", "--grid", "--format", "json",
                                      "--no-timing"};
  auto with = [&](const char* n) {
    auto args = base;
    args.push_back("--parallel");
    args.push_back(n);
    return run(args);
  };
  const auto one = with("1");
  const auto four = with("4");
  const auto eight = with("8");
  CHECK(one.code == four.code);
  CHECK(one.out == four.out);
  CHECK(one.out == eight.out);
  CHECK(run({"verify", "--parallel", "0"}).code == 2);
}

TEST_CASE("CSV and text formats", "[cli]") {
  const auto csv = run({"verify", "--id", "eq16", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("identity,variant,params,lhs,rhs,abs_residual,"
                      "rel_residual,status,expected_status,elapsed_ms\n",
                      0) == 0);
  CHECK(csv.out.find("eq16,as_printed,n=1,") != std::string::npos);

  const auto text = run({"verify", "--id", "eq16"});
  CHECK(text.out.find("0 differ from expectation") != std::string::npos);
  CHECK(run({"verify", "--format", "yaml"}).code == 2);
}

TEST_CASE("list", "[cli]") {
  const auto r = run({"list", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  REQUIRE(j.is_array());
  CHECK(j.size() >= 16);
  for (const auto& e : j) {
    CHECK(e.contains("id"));
    CHECK(e.contains("params"));
    CHECK(e["variants"].is_array());
  }
  CHECK(run({"list"}).out.find("eq18_li3") != std::string::npos);
}

TEST_CASE("eval", "[cli]") {
  auto value = [](const std::vector<std::string>& args) {
    const auto r = run(args);
    REQUIRE(r.code == 0);
    return r.out;
  };
  CHECK(value({"eval", "qnumber", "7"}).find("17/16") != std::string::npos);
  CHECK_THAT(std::stod(value({"eval", "K", "0.7071067811865476"})),
             WithinAbs(1.854074677301372, 1e-13));
  CHECK_THAT(std::stod(value({"eval", "lerch", "-1", "2", "0.5"})),
             WithinAbs(3.663862376708876, 1e-10));
  CHECK(value({"eval", "bernoulli", "12"}).find("-691/2730") !=
        std::string::npos);
  CHECK(run({"eval", "K", "1"}).code == 2);
  CHECK(run({"eval", "nosuch", "1"}).code == 2);
  CHECK(run({"eval", "qnumber"}).code == 2);
  CHECK(run({"eval", "qnumber", "x"}).code == 2);
}

TEST_CASE("table", "[cli]") {
  const auto q = run({"table", "q", "--max", "7", "--format", "json"});
  REQUIRE(q.code == 0);
  const auto j = json::parse(q.out);
  REQUIRE(j.size() == 8);
  CHECK(q.out.find("17/16") != std::string::npos);
  CHECK(run({"table", "eulerian", "--max", "5"}).out.find("66") !=
        std::string::npos);
  CHECK(run({"table", "q", "--max", "500"}).code == 2);
  CHECK(run({"table", "nosuch"}).code == 2);
}

TEST_CASE("transform", "[cli]") {
  const auto r = run({"transform", "theorem2", "--function", "t", "--a", "1",
                      "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK_THAT(j["lhs"].get<double>(), WithinAbs(0.253727962756657, 1e-9));
  CHECK_THAT(j["rhs"].get<double>(), WithinAbs(0.253727962756657, 1e-9));
  CHECK(run({"transform", "theorem1", "--function", "one"}).code == 0);
  CHECK(run({"transform", "theorem1", "--function", "t", "--a", "1"}).code ==
        2);
  CHECK(run({"transform", "theorem1", "--function", "one", "--a", "-1"})
            .code == 2);
  CHECK(run({"transform", "theorem1", "--function", "nosuch"}).code == 2);
}

TEST_CASE("ledger command", "[cli][ledger]") {
  const auto r = run({"ledger", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  bool eq13 = false;
  for (const auto& e : j) {
    if (e["identity"] == "eq13" && e["kind"] == "erratum") eq13 = true;
  }
  CHECK(eq13);
  const auto md = run({"ledger"});
  CHECK(md.out.find("| kind") != std::string::npos);
}

TEST_CASE("installed binary honours the exit-code contract",
          "[cli][process]") {
  CHECK(run_process("verify --id eq16").code == 0);
  CHECK(run_process("verify --id eq13 --strict").code == 1);
  CHECK(run_process("verify --id nosuch").code == 2);
  CHECK(run_process("transform theorem1 --function t --a 1").code == 2);
  const auto j = json::parse(
      run_process("verify --id eq16 --format json --no-timing").out);
  CHECK(j.size() == 1);
  CHECK(run_process("verify --grid --format json --no-timing --parallel 1")
            .out ==
        run_process("verify --grid --format json --no-timing --parallel 4")
            .out);
}
