#include <CLI11.hpp>
#include <iostream>

#include "gtp/acceptance.hpp"
#include "gtp/io.hpp"

namespace {

using namespace gtp;

void emit(const Json& report, bool as_json, const std::function<void(const Json&)>& human) {
    if (!lint_report(report)) fail("Internal", "report failed the exactness lint");
    if (as_json) {
        std::cout << report.dump(2) << "\n";
    } else {
        human(report);
    }
}

std::string level_name(EffectiveLevel level) {
    switch (level) {
        case EffectiveLevel::DclClosure: return "dcl_closure";
        case EffectiveLevel::ConvDcl: return "conv_dcl";
        case EffectiveLevel::PolarPolar: return "polar_polar";
    }
    fail("Internal", "unreachable");
}

int cmd_price(const std::string& file, const std::string& variable, bool as_json) {
    OneShotProblem problem = parse_one_shot(load_json_file(file));
    auto it = problem.variables.find(variable);
    if (it == problem.variables.end()) fail("BadInput", "no variable \"" + variable + "\" in file");
    const Variable& X = it->second;

    PriceChain chain = price_chain(problem.space, X);
    Json report{{"variable", variable},
                {"lower_g", extreal_json(chain.lower_g)},
                {"lower_p", extreal_json(chain.lower_p)},
                {"lower_p0", extreal_json(chain.lower_p0)},
                {"upper_p0", extreal_json(chain.upper_p0)},
                {"upper_p", extreal_json(chain.upper_p)},
                {"upper_g", extreal_json(chain.upper_g)},
                {"delta0_nonempty", chain.delta0_nonempty},
                {"minimax_gap", extreal_json(minimax_gap(problem.space, X))}};
    if (problem.space.n() <= 8) {
        Json vertices = Json::array();
        for (const Vec& v : enumerate_vertices(consistent_polytope(problem.space)))
            vertices.push_back(vec_json(v));
        report["delta0_vertices"] = std::move(vertices);
    }
    if (chain.upper_g.is_finite()) {
        ReplicationCertificate cert = replication_certificate(problem.space, X);
        Json j{{"alpha", rat_json(cert.alpha)}};
        if (cert.gamble_index >= 0)
            j["gamble_index"] = cert.gamble_index;
        else
            j["coefficients"] = vec_json(cert.coefficients);
        report["certificate"] = std::move(j);
    }
    emit(report, as_json, [](const Json& r) {
        std::cout << "price chain for " << r["variable"].get<std::string>() << "\n";
        for (const char* key : {"lower_g", "lower_p", "lower_p0", "upper_p0", "upper_p", "upper_g"})
            std::cout << "  " << key << " = " << r[key].get<std::string>() << "\n";
        std::cout << "  delta0 nonempty: " << (r["delta0_nonempty"].get<bool>() ? "yes" : "no")
                  << "\n  minimax gap = " << r["minimax_gap"].get<std::string>() << "\n";
        if (r.contains("delta0_vertices")) {
            std::cout << "  delta0 vertices:";
            for (const auto& v : r["delta0_vertices"]) {
                std::cout << " (";
                for (size_t i = 0; i < v.size(); ++i)
                    std::cout << (i ? "," : "") << v[i].get<std::string>();
                std::cout << ")";
            }
            std::cout << "\n";
        }
        if (r.contains("certificate"))
            std::cout << "  certificate alpha = " << r["certificate"]["alpha"].get<std::string>()
                      << "\n";
    });
    return 0;
}

int cmd_seq(const std::string& file, bool as_json) {
    SequentialProblem problem = parse_sequential(load_json_file(file));
    auto [gv, strategy] = gambler_value(problem.space, problem.X);
    auto [wv, kernel] = world_value(problem.space, problem.X);
    ExtReal gap = sub_pessimistic(gv, wv);

    Json strat = Json::object();
    for (const auto& [s, choice] : strategy.choices) {
        Json j;
        if (choice.gamble_index >= 0)
            j = Json{{"gamble_index", choice.gamble_index}};
        else
            j = Json{{"coefficients", vec_json(choice.coefficients)}};
        strat[situation_string(problem.space.alphabet, s)] = std::move(j);
    }
    Json kern = Json::object();
    for (const auto& [s, p] : kernel)
        kern[situation_string(problem.space.alphabet, s)] = vec_json(p);
    Json report{{"gambler_value", extreal_json(gv)},
                {"world_value", extreal_json(wv)},
                {"gap", extreal_json(gap)},
                {"strategy", std::move(strat)},
                {"kernel", std::move(kern)}};
    emit(report, as_json, [](const Json& r) {
        std::cout << "gambler value = " << r["gambler_value"].get<std::string>() << "\n"
                  << "world value   = " << r["world_value"].get<std::string>() << "\n"
                  << "gap           = " << r["gap"].get<std::string>() << "\n";
        std::cout << "strategy:\n";
        for (const auto& [s, j] : r["strategy"].items()) {
            std::cout << "  " << s << ":";
            if (j.contains("gamble_index")) {
                std::cout << " gamble " << j["gamble_index"].get<long>();
            } else {
                for (const auto& coef : j["coefficients"])
                    std::cout << " " << coef.get<std::string>();
            }
            std::cout << "\n";
        }
        std::cout << "kernel:\n";
        for (const auto& [s, p] : r["kernel"].items()) {
            std::cout << "  " << s << ":";
            for (const auto& e : p) std::cout << " " << e.get<std::string>();
            std::cout << "\n";
        }
    });
    return 0;
}

int cmd_simulate(const std::string& file, bool as_json) {
    BettingProblem problem = parse_betting(load_json_file(file));
    CapitalPath path = run_capital(problem.strategy, problem.outcomes, problem.initial);
    std::vector<Rat> factors;
    if (!path.bankrupt) factors = to_multiplicative(path);

    Json steps = Json::array();
    for (size_t t = 0; t < path.outcomes.size(); ++t) {
        Json step{{"t", t + 1},
                  {"y", rat_json(path.outcomes[t])},
                  {"stake", rat_json(path.stakes[t])},
                  {"capital", rat_json(path.capitals[t + 1])}};
        if (!path.bankrupt) step["factor"] = rat_json(factors[t]);
        steps.push_back(std::move(step));
    }
    Json report{{"strategy", problem.strategy.label},
                {"initial", rat_json(problem.initial)},
                {"bankrupt", path.bankrupt},
                {"final", rat_json(path.capitals.back())},
                {"steps", std::move(steps)}};
    if (!path.bankrupt && path.capitals.back() > 0)
        report["log_capital_lower_bound"] = rat_json(log_bounds(path.capitals.back()).lo);
    emit(report, as_json, [](const Json& r) {
        std::cout << "strategy " << r["strategy"].get<std::string>() << ", initial "
                  << r["initial"].get<std::string>() << "\n";
        std::cout << "t\ty\tstake\tcapital\tfactor\n";
        for (const auto& step : r["steps"]) {
            std::cout << step["t"].get<long>() << "\t" << step["y"].get<std::string>() << "\t"
                      << step["stake"].get<std::string>() << "\t"
                      << step["capital"].get<std::string>() << "\t"
                      << (step.contains("factor") ? step["factor"].get<std::string>() : "-")
                      << "\n";
        }
        std::cout << "final capital = " << r["final"].get<std::string>()
                  << (r["bankrupt"].get<bool>() ? " (bankrupt)" : "") << "\n";
    });
    return 0;
}

int cmd_regret(const std::string& file, bool as_json) {
    RegretProblem problem = parse_regret(load_json_file(file));
    ExtReal value = minimax_regret(problem.game);
    Relaxation rel = problem.relaxation == "doob" ? doob_relaxation(problem.game)
                                                  : exp_weights_relaxation(problem.game);
    Rat tol = problem.relaxation == "doob" ? Rat(0) : make_rat(1, 1L << 32);
    AdmissibilityReport admissible = check_admissible(problem.game, rel, tol);

    Json report{{"minimax_regret", extreal_json(value)},
                {"relaxation", problem.relaxation},
                {"relaxation_root_bound", extreal_json(rel.value({}))},
                {"tolerance", rat_json(tol)},
                {"admissible", admissible.admissible()},
                {"violations", Json::array()}};
    for (const auto& v : admissible.violations)
        report["violations"].push_back(
            Json{{"situation", situation_string(problem.game.alphabet, v.situation)},
                 {"detail", v.detail}});
    if (problem.game.horizon <= 8) {
        MasterReport master = master_bound_check(problem.game, rel);
        report["master_bound_holds"] = master.passes();
    }
    emit(report, as_json, [](const Json& r) {
        std::cout << "minimax regret = " << r["minimax_regret"].get<std::string>() << "\n"
                  << "relaxation " << r["relaxation"].get<std::string>()
                  << " root bound = " << r["relaxation_root_bound"].get<std::string>() << "\n"
                  << "admissible (tol " << r["tolerance"].get<std::string>()
                  << "): " << (r["admissible"].get<bool>() ? "yes" : "no") << "\n";
        if (r.contains("master_bound_holds"))
            std::cout << "master bound holds: "
                      << (r["master_bound_holds"].get<bool>() ? "yes" : "no") << "\n";
    });
    return 0;
}

int cmd_geometry(const std::string& file, const std::string& level_str, bool as_json) {
    OneShotProblem problem = parse_one_shot(load_json_file(file));
    EffectiveLevel level;
    if (level_str == "dcl_closure") {
        level = EffectiveLevel::DclClosure;
    } else if (level_str == "conv_dcl") {
        level = EffectiveLevel::ConvDcl;
    } else if (level_str == "polar_polar") {
        level = EffectiveLevel::PolarPolar;
    } else {
        fail("BadInput", "unknown level \"" + level_str + "\"");
    }
    EffectiveGambles eff = effective_gambles(problem.space, level);
    Json pieces = Json::array();
    for (const auto& piece : eff.pieces) {
        Json j{{"points", Json::array()}, {"rays", Json::array()}, {"halfspaces", Json::array()}};
        for (const Vec& p : piece.points) j["points"].push_back(vec_json(p));
        for (const Vec& r : piece.rays) j["rays"].push_back(vec_json(r));
        for (const auto& [normal, offset] : piece.halfspaces)
            j["halfspaces"].push_back(Json{{"normal", vec_json(normal)}, {"offset", rat_json(offset)}});
        pieces.push_back(std::move(j));
    }
    Json report{{"level", level_name(level)}, {"pieces", std::move(pieces)}};
    emit(report, as_json, [](const Json& r) {
        std::cout << "effective gambles at level " << r["level"].get<std::string>() << "\n";
        int idx = 0;
        for (const auto& piece : r["pieces"]) {
            std::cout << "piece " << idx++ << ":\n";
            for (const char* key : {"points", "rays"}) {
                std::cout << "  " << key << ":";
                for (const auto& v : piece[key]) {
                    std::cout << " (";
                    for (size_t i = 0; i < v.size(); ++i)
                        std::cout << (i ? "," : "") << v[i].get<std::string>();
                    std::cout << ")";
                }
                std::cout << "\n";
            }
            std::cout << "  halfspaces:\n";
            for (const auto& h : piece["halfspaces"]) {
                std::cout << "    <z,(";
                const auto& n = h["normal"];
                for (size_t i = 0; i < n.size(); ++i)
                    std::cout << (i ? "," : "") << n[i].get<std::string>();
                std::cout << ")> <= " << h["offset"].get<std::string>() << "\n";
            }
        }
    });
    return 0;
}

int cmd_selftest(bool as_json) {
    std::vector<CriterionResult> results = run_acceptance();
    if (as_json) {
        Json report = Json::array();
        for (const auto& r : results)
            report.push_back(Json{{"index", r.index},
                                  {"name", r.name},
                                  {"passed", r.passed},
                                  {"detail", r.detail}});
        if (!lint_report(report)) fail("Internal", "report failed the exactness lint");
        std::cout << report.dump(2) << "\n";
        for (const auto& r : results)
            if (!r.passed) return 1;
        return 0;
    }
    return report_acceptance(results, std::cout) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact game-theoretic probability workbench"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable JSON output");

    std::string file, variable = "X", level = "dcl_closure";
    auto* price = app.add_subcommand("price", "one-shot price chain");
    price->add_option("file", file)->required();
    price->add_option("--variable", variable, "variable name in the file");
    auto* seq = app.add_subcommand("seq", "sequential values and tables");
    seq->add_option("file", file)->required();
    auto* simulate = app.add_subcommand("simulate", "betting capital path");
    simulate->add_option("file", file)->required();
    auto* regret = app.add_subcommand("regret", "online-learning regret report");
    regret->add_option("file", file)->required();
    auto* geometry = app.add_subcommand("geometry", "effective gamble geometry");
    geometry->add_option("file", file)->required();
    geometry->add_option("--level", level, "dcl_closure | conv_dcl | polar_polar");
    auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");

    try {
        app.parse(argc, argv);
        if (price->parsed()) return cmd_price(file, variable, as_json);
        if (seq->parsed()) return cmd_seq(file, as_json);
        if (simulate->parsed()) return cmd_simulate(file, as_json);
        if (regret->parsed()) return cmd_regret(file, as_json);
        if (geometry->parsed()) return cmd_geometry(file, level, as_json);
        if (selftest->parsed()) return cmd_selftest(as_json);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const gtp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return std::string(e.code()) == "TheoremViolation" ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
