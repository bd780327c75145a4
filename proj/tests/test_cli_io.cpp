#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "morsegraded/cli_io.hpp"
#include "morsegraded/error.hpp"

using namespace mg;
using Json = nlohmann::json;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(MG_FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorCode parse_code(const std::string& text) {
  try {
    parse_input(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::invariant_breach;
}

Json run(const std::string& name, const std::string& command, int window, std::vector<int> fields = {0, 2, 3}) {
  RunConfig cfg;
  cfg.command = command;
  cfg.degree_window = window;
  cfg.fields = std::move(fields);
  return Json::parse(run_command(parse_input(fixture(name)), cfg));
}

}  // namespace

TEST_CASE("E1 fixture loads with its verified basis") {
  auto doc = parse_input(fixture("e1.json"));
  REQUIRE(doc.groebner_basis.has_value());
  REQUIRE(doc.groebner_basis->elements.size() == 1);
  CHECK(doc.groebner_basis->elements[0].plus == Monomial{0, 1, 0, 0, 1});
  CHECK(doc.semigroup.rank() == 5);
}

TEST_CASE("malformed documents are rejected with diagnostics") {
  CHECK(parse_code(R"({"dimension": 2, "generators": []})") == ErrorCode::invalid_input);
  CHECK(parse_code(R"({"dimension": 2})") == ErrorCode::parse_error);
  CHECK(parse_code(R"({"dimension": 2, "generators": [[1, 0], [0, -1]]})") == ErrorCode::parse_error);
  CHECK(parse_code(R"({"dimension": 2, "generators": [[1, 0], [0, 1, 2]]})") == ErrorCode::parse_error);
  CHECK(parse_code(fixture("e1_stale_gb.json")) == ErrorCode::invalid_basis);
  try {
    parse_input("{\n  \"dimension\": 2,\n  \"generators\": [[1, 0],, [0, 1]]\n}");
    FAIL("accepted malformed JSON");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse_error);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  try {
    parse_input(R"({"dimension": 2, "generators": [[1, 0], [0, "x"]]})");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("$.generators[1][1]") != std::string::npos);
  }
  CHECK(parse_code(R"({"dimension": 2, "generators": [[1, 0], [0, 1]], "targets": [[-1, 0]]})") ==
        ErrorCode::parse_error);
  CHECK(parse_code(R"({"dimension": 1, "generators": [[2], [3]], "targets": [[1]]})") == ErrorCode::invalid_input);
}

TEST_CASE("run configuration") {
  CHECK_THROWS_AS(parse_run_config(R"({"degree_window": 0})"), Error);
  CHECK_THROWS_AS(parse_run_config(R"({"fields": [4]})"), Error);
  CHECK_THROWS_AS(parse_run_config(R"({"path_cap": 0})"), Error);
  try {
    parse_run_config(R"({"command": "fly"})");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unknown_command);
  }
  auto cfg = parse_run_config(R"({"command": "betti", "fields": [0, 5], "seed": 9})");
  CHECK(cfg.command == "betti");
  CHECK(cfg.fields == std::vector<int>{0, 5});
  CHECK(parse_run_config(run_config_json(cfg)).seed == 9);
}

TEST_CASE("full report on E1") {
  auto r = run("e1.json", "full", 5);
  CHECK(r["consistency"]["pass"] == true);
  bool found = false;
  for (const auto& run : r["cancellation"]["intervals"])
    if (run["lambda"] == Json::array({2, 2, 1, 1})) {
      found = true;
      CHECK(run["final_morse"] == Json::array({1, 0, 2}));
    }
  CHECK(found);
  CHECK(r["series"]["expansion"][1]["coefficient"] == "5");
  CHECK(r["series"]["expansion"][2]["coefficient"] == "11");
  CHECK(r["config"]["degree_window"] == 5);
  CHECK(r["versions"].contains("morsegraded"));
  CHECK_FALSE(r.contains("timing_ms"));
}

TEST_CASE("betti on the free plane is diagonal") {
  auto r = run("free2.json", "betti", 4, {0});
  for (const auto& e : r["betti"][0]["entries"]) {
    const auto& l = e["lambda"];
    int total = l[0].get<int>() + l[1].get<int>();
    if (e["rank"].get<long>() != 0) CHECK(total == e["index"].get<int>());
  }
  CHECK(r["betti"][0]["totals"] == Json({{"0", 1}, {"1", 2}, {"2", 1}}));
  RunConfig cfg;
  cfg.command = "betti";
  cfg.format = "tsv";
  cfg.fields = {0};
  auto tsv = run_command(parse_input(fixture("free2.json")), cfg);
  CHECK(tsv.find("(1,1)\t2\t0\t0\t1") != std::string::npos);
}

TEST_CASE("verify-bounds on the degree-3 sharpness ring") {
  auto r = run("sharp3.json", "verify-bounds", 4);
  for (const auto& v : r["bounds"]["vanishing"]) {
    CHECK(v["violations"].empty());
    REQUIRE(v["sharp_witnesses"].size() == 1);
    CHECK(v["sharp_witnesses"][0]["lambda"] == Json::array({1, 1, 1, 1, 1, 1}));
  }
}

TEST_CASE("every command produces a deterministic report") {
  for (const auto& cmd : command_names()) {
    RunConfig cfg;
    cfg.command = cmd;
    cfg.degree_window = 3;
    auto doc = parse_input(fixture("e3.json"));
    auto a = run_command(doc, cfg);
    CHECK(a == run_command(doc, cfg));
    CHECK(Json::parse(a)["command"] == cmd);
  }
}

TEST_CASE("term order override") {
  RunConfig cfg;
  cfg.command = "gb";
  cfg.term_order = "graded-revlex";
  auto r = Json::parse(run_command(parse_input(fixture("e3.json")), cfg));
  CHECK(r["groebner_basis"]["order"]["kind"] == "graded-revlex");
  try {
    run_command(parse_input(fixture("e1.json")), cfg);
    FAIL("override accepted against a supplied basis");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_input);
  }
}
