#pragma once

#include <json.hpp>
#include <map>
#include <optional>

#include "gtp/betting.hpp"
#include "gtp/onlinelearn.hpp"

namespace gtp {

using Json = nlohmann::json;

// Loads and parses a JSON problem file; malformed input raises "ParseError".
Json load_json_file(const std::string& path);

std::string problem_kind(const Json& body);

struct OneShotProblem {
    GambleSpace space;
    std::map<std::string, Variable> variables;
};

struct SequentialProblem {
    SequentialSpace space;
    Variable X;
};

struct BettingProblem {
    BettingStrategy strategy;
    std::optional<AzumaStrategy> azuma;
    std::vector<Rat> outcomes;
    Rat initial;
};

struct RegretProblem {
    OnlineGame game;
    std::string relaxation;  // "exp_weights" (default) or "doob"
};

OneShotProblem parse_one_shot(const Json& body);
SequentialProblem parse_sequential(const Json& body);
BettingProblem parse_betting(const Json& body);
RegretProblem parse_regret(const Json& body);

Json one_shot_to_json(const OneShotProblem& problem);
Json sequential_to_json(const SequentialProblem& problem);
Json regret_to_json(const RegretProblem& problem);

// JSON fragments for exact values.
Json rat_json(const Rat& r);
Json extreal_json(const ExtReal& x);
Json vec_json(const Vec& v);
ExtReal parse_extreal_json(const Json& j);

// Reports carry only exact rationals (strings) or integers; floating-point
// values anywhere make a report invalid.
bool lint_report(const Json& report);

}  // namespace gtp
