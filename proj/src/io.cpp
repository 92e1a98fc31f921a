#include "gtp/io.hpp"

#include <fstream>
#include <random>

namespace gtp {

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("ParseError", "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        fail("ParseError", std::string(e.what()));
    }
}

namespace {

const Json& field(const Json& body, const char* name) {
    auto it = body.find(name);
    if (it == body.end()) fail("ParseError", std::string("missing field \"") + name + "\"");
    return *it;
}

std::vector<std::string> string_list(const Json& j, const char* what) {
    if (!j.is_array() || j.empty()) fail("ParseError", std::string(what) + " must be a nonempty array");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) fail("ParseError", std::string(what) + " entries must be strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

Rat parse_rat_json(const Json& j) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (!j.is_string()) fail("ParseError", "rationals must be strings or integers");
    return parse_rat(j.get<std::string>());
}

std::vector<Rat> rat_list(const Json& j, const char* what) {
    if (!j.is_array()) fail("ParseError", std::string(what) + " must be an array");
    std::vector<Rat> out;
    for (const auto& e : j) out.push_back(parse_rat_json(e));
    return out;
}

Variable parse_variable_json(const Json& j) {
    if (!j.is_array()) fail("ParseError", "variable must be an array");
    std::vector<ExtReal> values;
    for (const auto& e : j) {
        if (e.is_string()) {
            values.push_back(ExtReal::parse(e.get<std::string>()));
        } else if (e.is_number_integer()) {
            values.push_back(ExtReal(Rat(e.get<long>())));
        } else {
            fail("ParseError", "variable entries must be strings or integers");
        }
    }
    return Variable(std::move(values));
}

GambleSet parse_gamble_set(const Json& body, Eigen::Index n) {
    std::string rep = field(body, "representation").get<std::string>();
    const Json& rows = field(body, "gambles");
    if (!rows.is_array()) fail("ParseError", "gambles must be an array");
    if (rep == "explicit") {
        std::vector<Variable> gambles;
        for (const auto& row : rows) {
            Variable g = parse_variable_json(row);
            if (g.size() != n) fail("ParseError", "gamble length mismatch");
            gambles.push_back(std::move(g));
        }
        return explicit_set(std::move(gambles));
    }
    std::vector<Vec> generators;
    for (const auto& row : rows) {
        std::vector<Rat> entries = rat_list(row, "gamble");
        if (static_cast<Eigen::Index>(entries.size()) != n)
            fail("ParseError", "gamble length mismatch");
        generators.push_back(from_std(entries));
    }
    if (rep == "cone") return cone_set(generators);
    if (rep == "hull") return hull_set(generators);
    fail("ParseError", "unknown representation \"" + rep + "\"");
}

std::string rep_name(GambleRep rep) {
    switch (rep) {
        case GambleRep::Explicit: return "explicit";
        case GambleRep::Cone: return "cone";
        case GambleRep::Hull: return "hull";
    }
    fail("Internal", "unreachable");
}

Json gamble_set_json(const GambleSet& set) {
    Json rows = Json::array();
    for (const auto& g : set.gambles) {
        Json row = Json::array();
        for (const auto& x : g.values) row.push_back(x.to_string());
        rows.push_back(std::move(row));
    }
    return Json{{"representation", rep_name(set.rep)}, {"gambles", std::move(rows)}};
}

}  // namespace

std::string problem_kind(const Json& body) {
    return field(body, "kind").get<std::string>();
}

OneShotProblem parse_one_shot(const Json& body) {
    std::vector<std::string> outcomes = string_list(field(body, "outcomes"), "outcomes");
    const Eigen::Index n = static_cast<Eigen::Index>(outcomes.size());
    OneShotProblem problem{make_space(outcomes, parse_gamble_set(body, n)), {}};
    if (auto it = body.find("variables"); it != body.end()) {
        for (const auto& [name, value] : it->items()) {
            Variable v = parse_variable_json(value);
            if (v.size() != n) fail("ParseError", "variable length mismatch");
            problem.variables.emplace(name, std::move(v));
        }
    }
    return problem;
}

SequentialProblem parse_sequential(const Json& body) {
    std::vector<std::string> alphabet = string_list(field(body, "alphabet"), "alphabet");
    int horizon = field(body, "horizon").get<int>();
    GambleSet per_round = parse_gamble_set(body, static_cast<Eigen::Index>(alphabet.size()));
    SequentialSpace space = uniform_sequential_space(alphabet, horizon, std::move(per_round));
    Variable X = parse_variable_json(field(body, "leaves"));
    if (X.size() != space.leaf_count()) fail("ParseError", "leaves length mismatch");
    return {std::move(space), std::move(X)};
}

BettingProblem parse_betting(const Json& body) {
    BettingProblem problem;
    problem.initial = body.contains("initial") ? parse_rat_json(body["initial"]) : Rat(1);
    std::string name = field(body, "strategy").get<std::string>();
    if (name == "kt") {
        problem.strategy = kt_strategy();
    } else if (name == "constant_fraction") {
        problem.strategy = constant_fraction(parse_rat_json(field(body, "fraction")));
    } else if (name == "azuma") {
        problem.azuma = azuma_strategy(parse_rat_json(field(body, "eps")),
                                       field(body, "T").get<long>());
        problem.strategy = problem.azuma->strategy;
    } else {
        fail("ParseError", "unknown strategy \"" + name + "\"");
    }
    if (auto it = body.find("generator"); it != body.end()) {
        std::vector<Rat> values = rat_list(field(*it, "values"), "generator values");
        if (values.empty()) fail("ParseError", "generator values must be nonempty");
        long count = field(*it, "count").get<long>();
        std::mt19937_64 rng(field(*it, "seed").get<std::uint64_t>());
        std::uniform_int_distribution<size_t> pick(0, values.size() - 1);
        for (long i = 0; i < count; ++i) problem.outcomes.push_back(values[pick(rng)]);
    } else {
        problem.outcomes = rat_list(field(body, "outcomes"), "outcomes");
    }
    return problem;
}

RegretProblem parse_regret(const Json& body) {
    std::vector<std::string> actions = string_list(field(body, "actions"), "actions");
    std::vector<std::string> alphabet = string_list(field(body, "alphabet"), "alphabet");
    const Json& rows = field(body, "loss");
    if (!rows.is_array() || rows.size() != actions.size())
        fail("ParseError", "loss table must have one row per action");
    Mat loss(static_cast<Eigen::Index>(actions.size()),
             static_cast<Eigen::Index>(alphabet.size()));
    for (Eigen::Index f = 0; f < loss.rows(); ++f) {
        std::vector<Rat> row = rat_list(rows[static_cast<size_t>(f)], "loss row");
        if (static_cast<Eigen::Index>(row.size()) != loss.cols())
            fail("ParseError", "loss row length mismatch");
        for (Eigen::Index y = 0; y < loss.cols(); ++y) loss(f, y) = row[static_cast<size_t>(y)];
    }
    RegretProblem problem{make_game(actions, alphabet, std::move(loss),
                                    field(body, "horizon").get<int>()),
                          "exp_weights"};
    if (auto it = body.find("relaxation"); it != body.end())
        problem.relaxation = it->get<std::string>();
    if (problem.relaxation != "exp_weights" && problem.relaxation != "doob")
        fail("ParseError", "unknown relaxation \"" + problem.relaxation + "\"");
    return problem;
}

Json one_shot_to_json(const OneShotProblem& problem) {
    Json body = gamble_set_json(problem.space.gambles);
    body["kind"] = "one_shot";
    body["outcomes"] = problem.space.outcome_labels;
    Json vars = Json::object();
    for (const auto& [name, v] : problem.variables) {
        Json row = Json::array();
        for (const auto& x : v.values) row.push_back(x.to_string());
        vars[name] = std::move(row);
    }
    body["variables"] = std::move(vars);
    return body;
}

Json sequential_to_json(const SequentialProblem& problem) {
    Json body = gamble_set_json(problem.space.gamble_rule({}));
    body["kind"] = "sequential";
    body["alphabet"] = problem.space.alphabet;
    body["horizon"] = problem.space.horizon;
    Json leaves = Json::array();
    for (const auto& x : problem.X.values) leaves.push_back(x.to_string());
    body["leaves"] = std::move(leaves);
    return body;
}

Json regret_to_json(const RegretProblem& problem) {
    Json rows = Json::array();
    for (Eigen::Index f = 0; f < problem.game.loss.rows(); ++f) {
        Json row = Json::array();
        for (Eigen::Index y = 0; y < problem.game.loss.cols(); ++y)
            row.push_back(format_rat(problem.game.loss(f, y)));
        rows.push_back(std::move(row));
    }
    return Json{{"kind", "regret"},           {"actions", problem.game.actions},
                {"alphabet", problem.game.alphabet}, {"loss", std::move(rows)},
                {"horizon", problem.game.horizon},   {"relaxation", problem.relaxation}};
}

Json rat_json(const Rat& r) { return format_rat(r); }

Json extreal_json(const ExtReal& x) { return x.to_string(); }

Json vec_json(const Vec& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(format_rat(v(i)));
    return out;
}

ExtReal parse_extreal_json(const Json& j) {
    if (j.is_number_integer()) return ExtReal(Rat(j.get<long>()));
    if (!j.is_string()) fail("ParseError", "expected an extended rational");
    return ExtReal::parse(j.get<std::string>());
}

bool lint_report(const Json& report) {
    if (report.is_number_float()) return false;
    if (report.is_array() || report.is_object()) {
        for (const auto& e : report)
            if (!lint_report(e)) return false;
    }
    return true;
}

}  // namespace gtp
