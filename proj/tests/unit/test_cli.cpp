#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cli.hpp"

using galdesc::cli::CommandSpec;
using galdesc::cli::dispatch;
using galdesc::cli::json;

namespace {

CommandSpec cmd(std::string sub, std::map<std::string, std::string> flags = {}) {
  CommandSpec s;
  s.subcommand = std::move(sub);
  s.flags = std::move(flags);
  return s;
}

json run_ok(const CommandSpec& s) {
  auto r = dispatch(s);
  INFO(r.output);
  REQUIRE(r.exit_code == 0);
  return json::parse(r.output);
}

struct Proc {
  int status;
  std::string out;
};

Proc run_binary(const std::string& args) {
  std::string command = "GALDESC_LOG=quiet \"" GALDESC_CLI_PATH "\" " + args;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("unknown subcommands are rejected") {
    CHECK(galdesc::cli::subcommands().size() == 12);
    auto r = dispatch(cmd("frobnicate"));
    CHECK(r.exit_code == 2);
    CHECK(json::parse(r.output)["error"] == "UnknownSubcommand");
  }

  TEST_CASE("classification table") {
    json out = run_ok(cmd("classify-gl2"));
    REQUIRE(out.size() == 12);
    std::map<std::string, std::pair<std::string, std::string>> expected = {
        {"G1", {"12", "D12"}}, {"G2", {"8", "D8"}},     {"G3", {"6", "D6"}},   {"G4", {"6", "D6"}},
        {"G5", {"4", "C2xC2"}}, {"G6", {"4", "C2xC2"}}, {"G7", {"6", "C6"}},   {"G8", {"4", "C4"}},
        {"G9", {"3", "C3"}},   {"G10", {"2", "C2"}},    {"G11", {"2", "C2"}}, {"G12", {"2", "C2"}}};
    for (const auto& rec : out) {
      auto it = expected.find(rec["id"]);
      REQUIRE(it != expected.end());
      CHECK(rec["order"] == it->second.first);
      CHECK(rec["isomorphism_type"] == it->second.second);
      CHECK(rec["elements"].size() == std::stoul(it->second.first));
    }
  }

  TEST_CASE("mmp on fixtures") {
    json out = run_ok(cmd("mmp", {{"fan", "hexagon"}, {"group", "G1"}}));
    CHECK(out["model_class"] == "DP6Form");
    CHECK(out["picard_rank_form"] == "1");
    CHECK(out["contractions"].empty());
    json ex = run_ok(cmd("mmp", {{"group", "G12"}, {"strategy", "exhaustive"}}));
    CHECK(ex["outcomes"].size() == 2);
    json sq = run_ok(cmd("mmp", {{"group", "trivial"}, {"square", "true"}}));
    CHECK(sq["model_class"] == "P1xP1Form");
    CHECK(sq["picard_rank_form"] == "2");
    auto bad = dispatch(cmd("mmp", {{"group", "G1"}, {"strategy", "greedy"}}));
    CHECK(bad.exit_code == 2);
  }

  TEST_CASE("remaining subcommands produce JSON") {
    CHECK(run_ok(cmd("subgroup-poset", {{"group", "G1"}}))["edges"].size() == 11);
    CHECK(run_ok(cmd("subgroup-poset", {{"group", "G2"}}))["edges"].size() == 16);
    CHECK(run_ok(cmd("norm-form", {{"field", "gaussian"}}))["form"] == "x^2 + y^2");
    CHECK(run_ok(cmd("norm-member", {{"d", "-1"}, {"alpha", "-1"}}))["member"] == false);
    CHECK(run_ok(cmd("norm-member", {{"d", "-1"}, {"alpha", "5"}}))["member"] == true);
    json t = run_ok(cmd("torus-info", {{"group", "G12"}}));
    CHECK(t["quasi_trivial"]["status"] == "yes");
    CHECK(t["auto_trivial"] == true);
    CHECK(run_ok(cmd("h1-table")).size() == 13);
    CHECK(run_ok(cmd("check-cocycle", {{"example", "circle"}}))["passed"] == true);
    CHECK(run_ok(cmd("check-cocycle", {{"example", "circle-bad"}}))["condition2"]["passed"] == false);
    CHECK(run_ok(cmd("check-cocycle", {{"example", "p1-swap-trivial"}}))["condition1"]["passed"] == false);
    CHECK(run_ok(cmd("evaluate-ppdiv", {{"example", "p1"}}))["divisor"] == json{{"D0", "1"}, {"Dinf", "-1"}});
    json d = run_ok(cmd("downgrade", {{"example", "diagonal"}}));
    CHECK(d["coefficients"]["D(-1)"]["vertices"] == json::parse(R"([["1"]])"));
    CHECK(run_ok(cmd("verify-downgrade", {{"example", "orthant3"}, {"box", "5"}}))["passed"] == true);
    json c = run_ok(cmd("compactify", {{"group", "G8"}}));
    CHECK(c["fan"] == "square");
    CHECK(c["class"] == "G8");
  }

  TEST_CASE("domain errors exit with status 1") {
    CommandSpec s = cmd("mmp");
    s.input_text = R"({"group": {"generators": [[["1", "1"], ["0", "1"]]]}})";
    auto r = dispatch(s);
    CHECK(r.exit_code == 1);
    json j = json::parse(r.output);
    CHECK(j["error"] == "NotFinite");
    CHECK(j.contains("detail"));

    CommandSpec e = cmd("evaluate-ppdiv");
    json doc = *galdesc::cli::example_document("p1");
    doc["m"] = json::array({"-1"});
    e.input_text = doc.dump();
    auto r2 = dispatch(e);
    CHECK(r2.exit_code == 1);
    CHECK(json::parse(r2.output)["error"] == "OutsideWeightCone");
  }

  TEST_CASE("malformed input exits with status 2") {
    CommandSpec s = cmd("mmp");
    s.input_text = "{\"fan\": ";
    auto r = dispatch(s);
    CHECK(r.exit_code == 2);
    CHECK(json::parse(r.output)["error"] == "MalformedJson");
    auto missing = dispatch(cmd("downgrade"));
    CHECK(missing.exit_code == 2);
    auto box = dispatch(cmd("verify-downgrade", {{"example", "diagonal"}, {"box", "eight"}}));
    CHECK(box.exit_code == 2);
    auto cls = dispatch(cmd("torus-info", {{"group", "G13"}}));
    CHECK(cls.exit_code == 2);
    CHECK(json::parse(cls.output)["error"] == "UnknownClass");
  }

  TEST_CASE("validation aggregates located errors") {
    json hexagon = json::parse(R"({"fan": {"rays": [["1","0"],["1","1"],["0","1"],["-1","0"],["-1","-1"],["0","-1"]]}})");
    CHECK(galdesc::cli::validate_input(hexagon).ok());

    json bad = json::parse(R"({"fan": {"rays": [["2","0"],["0","1"],["-1","-1"]]},
                               "group": {"generators": [[["1","2"],["2","4"]]]},
                               "m": [3], "colour": "red"})");
    auto v = galdesc::cli::validate_input(bad);
    REQUIRE(!v.ok());
    std::map<std::string, std::string> got;
    for (const auto& e : v.errors) got[e.code] = e.path;
    CHECK(got["RayNotPrimitive"] == "/fan/rays/0");
    CHECK(got["NotUnimodular"] == "/group/generators/0");
    CHECK(got["NotAString"] == "/m/0");
    CHECK(got["UnknownField"] == "/colour");
    CHECK(v.normalized.is_null());

    json not_smooth = json::parse(R"({"fan": {"rays": [["1","0"],["1","2"],["-1","-1"]]}})");
    auto v2 = galdesc::cli::validate_input(not_smooth);
    REQUIRE(v2.errors.size() == 1);
    CHECK(v2.errors[0].code == "NotSmooth");
  }

  TEST_CASE("normalized documents round-trip byte for byte") {
    json raw = json::parse(R"({"fan": {"rays": [["+1","00"],["0","1"],["-1","-1"]]}, "m": ["007"]})");
    auto v = galdesc::cli::validate_input(raw);
    REQUIRE(v.ok());
    CHECK(v.normalized["m"][0] == "7");
    std::string once = galdesc::cli::serialize(v.normalized);
    CHECK(galdesc::cli::serialize(json::parse(once)) == once);
    for (const char* name : {"diagonal", "line", "orthant3", "diagonal-swap", "orthant3-swap", "circle", "circle-bad",
                             "p1", "p1-swap", "p1-swap-trivial"}) {
      CAPTURE(name);
      auto doc = galdesc::cli::example_document(name);
      REQUIRE(doc);
      auto vd = galdesc::cli::validate_input(*doc);
      REQUIRE(vd.ok());
      std::string text = galdesc::cli::serialize(vd.normalized);
      CHECK(galdesc::cli::serialize(galdesc::cli::validate_input(json::parse(text)).normalized) == text);
    }
  }

  TEST_CASE("executable exit codes and output") {
    auto ok = run_binary("mmp --fan hexagon --group G1");
    CHECK(ok.status == 0);
    CHECK(json::parse(ok.out)["model_class"] == "DP6Form");

    auto path = std::filesystem::temp_directory_path() / "galdesc_cli_malformed.json";
    std::ofstream(path) << "{ not json";
    auto bad = run_binary("mmp --input " + path.string());
    CHECK(bad.status == 2);
    CHECK(json::parse(bad.out)["error"] == "MalformedJson");
    std::filesystem::remove(path);

    auto args = run_binary("mmp --no-such-flag 3");
    CHECK(args.status == 2);
    CHECK(json::parse(args.out).contains("error"));

    auto dom = run_binary("norm-member --d 4 --alpha 1");
    CHECK(dom.status == 1);
    CHECK(json::parse(dom.out)["error"] == "NotSquarefree");
  }
}
