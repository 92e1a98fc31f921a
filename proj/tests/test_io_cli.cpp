#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtp/io.hpp"

using namespace gtp;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    std::filesystem::path p = std::filesystem::temp_directory_path() / name;
    std::ofstream out(p);
    out << content;
    return p;
}

const char* kFairCoinOneShot = R"({
  "kind": "one_shot",
  "outcomes": ["t", "h"],
  "representation": "cone",
  "gambles": [["-1", "1"], ["1", "-1"]],
  "variables": {"X": ["0", "1"]}
})";

const char* kMatchSequential = R"({
  "kind": "sequential",
  "alphabet": ["L", "W"],
  "horizon": 2,
  "representation": "cone",
  "gambles": [["-1", "1"], ["1", "-1"]],
  "leaves": ["0", "0", "0", "100"]
})";

int run_gw(const std::string& args, std::string* output = nullptr) {
    std::filesystem::path out = std::filesystem::temp_directory_path() / "gw_out.txt";
    std::string cmd = "./gw " + args + " > " + out.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    if (output) {
        std::ifstream in(out);
        std::ostringstream ss;
        ss << in.rdbuf();
        *output = ss.str();
    }
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("exact value fragments") {
    CHECK(rat_json(make_rat(-3, 6)) == Json("-1/2"));
    CHECK(extreal_json(ExtReal::pos_inf()) == Json("inf"));
    Vec v(2);
    v << make_rat(1, 3), Rat(2);
    Json jv = vec_json(v);
    REQUIRE(jv.size() == 2);
    CHECK(jv[0] == Json("1/3"));
    CHECK(jv[1] == Json("2"));
    CHECK(parse_extreal_json(Json("-inf")) == ExtReal::neg_inf());
    CHECK(parse_extreal_json(Json(7)) == ExtReal(Rat(7)));
    CHECK_THROWS_WITH_AS(parse_extreal_json(Json(true)), doctest::Contains("ParseError"), Error);
}

TEST_CASE("report lint rejects floating point anywhere") {
    CHECK(lint_report(Json{{"a", "1/2"}, {"b", 3}}));
    CHECK(lint_report(Json::array({1, "x", Json{{"k", true}}})));
    CHECK_FALSE(lint_report(Json(0.5)));
    CHECK_FALSE(lint_report(Json{{"outer", Json{{"inner", Json::array({1, 2, 0.5})}}}}));
}

TEST_CASE("one-shot problems round trip") {
    Json body = Json::parse(kFairCoinOneShot);
    CHECK(problem_kind(body) == "one_shot");
    OneShotProblem problem = parse_one_shot(body);
    CHECK(problem.space.n() == 2);
    CHECK(problem.space.gambles.rep == GambleRep::Cone);
    REQUIRE(problem.variables.count("X") == 1);
    CHECK(upper_expectation(problem.space, problem.variables.at("X")) ==
          ExtReal(make_rat(1, 2)));

    OneShotProblem again = parse_one_shot(one_shot_to_json(problem));
    CHECK(again.space.outcome_labels == problem.space.outcome_labels);
    CHECK(upper_expectation(again.space, again.variables.at("X")) == ExtReal(make_rat(1, 2)));

    Json broken = body;
    broken.erase("outcomes");
    CHECK_THROWS_WITH_AS(parse_one_shot(broken), doctest::Contains("ParseError"), Error);
    Json short_var = body;
    short_var["variables"]["X"] = Json::array({"1"});
    CHECK_THROWS_WITH_AS(parse_one_shot(short_var), doctest::Contains("ParseError"), Error);
    Json bad_rep = body;
    bad_rep["representation"] = "fancy";
    CHECK_THROWS_WITH_AS(parse_one_shot(bad_rep), doctest::Contains("ParseError"), Error);
}

TEST_CASE("sequential problems round trip") {
    SequentialProblem problem = parse_sequential(Json::parse(kMatchSequential));
    CHECK(problem.space.horizon == 2);
    CHECK(gambler_value(problem.space, problem.X).first == ExtReal(Rat(25)));

    SequentialProblem again = parse_sequential(sequential_to_json(problem));
    CHECK(gambler_value(again.space, again.X).first == ExtReal(Rat(25)));

    Json short_leaves = Json::parse(kMatchSequential);
    short_leaves["leaves"] = Json::array({"0", "100"});
    CHECK_THROWS_WITH_AS(parse_sequential(short_leaves), doctest::Contains("ParseError"), Error);
}

TEST_CASE("betting problems") {
    BettingProblem kt = parse_betting(Json::parse(
        R"({"kind":"betting","strategy":"kt","outcomes":["1","-1","1/2"],"initial":"2"})"));
    CHECK(kt.strategy.label == "kt");
    CHECK(kt.initial == Rat(2));
    CHECK(kt.outcomes == std::vector<Rat>{Rat(1), Rat(-1), make_rat(1, 2)});
    CHECK_FALSE(kt.azuma.has_value());

    BettingProblem az = parse_betting(Json::parse(
        R"({"kind":"betting","strategy":"azuma","eps":"1/2","T":4,"outcomes":[1,-1]})"));
    REQUIRE(az.azuma.has_value());
    CHECK(az.azuma->T == 4);
    CHECK(az.initial == Rat(1));

    // Seeded generators are reproducible and draw from the given values.
    const char* gen = R"({"kind":"betting","strategy":"constant_fraction","fraction":"1/4",
                          "generator":{"seed":11,"count":20,"values":["1","-1"]}})";
    BettingProblem g1 = parse_betting(Json::parse(gen));
    BettingProblem g2 = parse_betting(Json::parse(gen));
    CHECK(g1.outcomes.size() == 20);
    CHECK(g1.outcomes == g2.outcomes);
    for (const Rat& y : g1.outcomes) CHECK((y == Rat(1) || y == Rat(-1)));

    CHECK_THROWS_WITH_AS(
        parse_betting(Json::parse(R"({"kind":"betting","strategy":"martingale","outcomes":[]})")),
        doctest::Contains("ParseError"), Error);
    CHECK_THROWS_WITH_AS(
        parse_betting(Json::parse(R"({"kind":"betting","strategy":"constant_fraction","outcomes":[]})")),
        doctest::Contains("ParseError"), Error);
}

TEST_CASE("regret problems") {
    const char* pennies = R"({
      "kind": "regret",
      "actions": ["call0", "call1"],
      "alphabet": ["0", "1"],
      "loss": [["0", "1"], ["1", "0"]],
      "horizon": 2
    })";
    RegretProblem problem = parse_regret(Json::parse(pennies));
    CHECK(problem.relaxation == "exp_weights");
    CHECK(minimax_regret(problem.game) == ExtReal(make_rat(1, 2)));

    RegretProblem again = parse_regret(regret_to_json(problem));
    CHECK(again.game.loss == problem.game.loss);

    Json doob = Json::parse(pennies);
    doob["relaxation"] = "doob";
    CHECK(parse_regret(doob).relaxation == "doob");
    doob["relaxation"] = "magic";
    CHECK_THROWS_WITH_AS(parse_regret(doob), doctest::Contains("ParseError"), Error);
    Json ragged = Json::parse(pennies);
    ragged["loss"] = Json::array({Json::array({"0", "1"})});
    CHECK_THROWS_WITH_AS(parse_regret(ragged), doctest::Contains("ParseError"), Error);
}

TEST_CASE("file loading errors") {
    CHECK_THROWS_WITH_AS(load_json_file("/nonexistent/problem.json"),
                         doctest::Contains("ParseError"), Error);
    auto bad = temp_file("gw_bad.json", "{ not json");
    CHECK_THROWS_WITH_AS(load_json_file(bad.string()), doctest::Contains("ParseError"), Error);
}

TEST_CASE("cli price and geometry") {
    auto coin = temp_file("gw_coin.json", kFairCoinOneShot);
    std::string out;
    CHECK(run_gw("--json price " + coin.string(), &out) == 0);
    Json report = Json::parse(out);
    CHECK(report["upper_g"] == Json("1/2"));
    CHECK(report["lower_g"] == Json("1/2"));
    CHECK(report["delta0_nonempty"] == Json(true));
    CHECK(report["delta0_vertices"][0] == Json::array({"1/2", "1/2"}));
    CHECK(lint_report(report));

    CHECK(run_gw("price " + coin.string(), &out) == 0);
    CHECK(out.find("upper_g = 1/2") != std::string::npos);
    CHECK(run_gw("price " + coin.string() + " --variable missing") == 2);

    CHECK(run_gw("--json geometry " + coin.string() + " --level polar_polar", &out) == 0);
    Json geo = Json::parse(out);
    CHECK(geo["level"] == Json("polar_polar"));
    CHECK(geo["pieces"].size() == 1);
    CHECK(run_gw("geometry " + coin.string() + " --level sideways") == 2);
}

TEST_CASE("cli seq, simulate and regret") {
    auto match = temp_file("gw_match.json", kMatchSequential);
    std::string out;
    CHECK(run_gw("--json seq " + match.string(), &out) == 0);
    Json report = Json::parse(out);
    CHECK(report["gambler_value"] == Json("25"));
    CHECK(report["world_value"] == Json("25"));
    CHECK(report["gap"] == Json("0"));
    CHECK(report["kernel"]["@"] == Json::array({"1/2", "1/2"}));

    auto bet = temp_file("gw_bet.json",
                         R"({"kind":"betting","strategy":"kt","outcomes":["1","1"]})");
    CHECK(run_gw("--json simulate " + bet.string(), &out) == 0);
    Json sim = Json::parse(out);
    CHECK(sim["final"] == Json("3/2"));
    CHECK(sim["bankrupt"] == Json(false));
    CHECK(lint_report(sim));

    auto pen = temp_file("gw_pen.json", R"({
      "kind": "regret", "actions": ["a", "b"], "alphabet": ["0", "1"],
      "loss": [["0", "1"], ["1", "0"]], "horizon": 2, "relaxation": "doob"
    })");
    CHECK(run_gw("--json regret " + pen.string(), &out) == 0);
    Json reg = Json::parse(out);
    CHECK(reg["minimax_regret"] == Json("1/2"));
    CHECK(reg["relaxation_root_bound"] == Json("1/2"));
    CHECK(reg["admissible"] == Json(true));
    CHECK(reg["master_bound_holds"] == Json(true));
}

TEST_CASE("cli argument and parse failures") {
    CHECK(run_gw("") == 2);
    CHECK(run_gw("dance") == 2);
    CHECK(run_gw("price /nonexistent/problem.json") == 2);
    auto bad = temp_file("gw_bad2.json", "[1, 2");
    CHECK(run_gw("price " + bad.string()) == 2);
}
