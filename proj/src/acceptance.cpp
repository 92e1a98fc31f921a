#include "gtp/acceptance.hpp"

#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "gtp/betting.hpp"
#include "gtp/onlinelearn.hpp"

namespace gtp {

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
};

Rat random_rat(std::mt19937_64& rng, long lo, long hi, long max_den) {
    std::uniform_int_distribution<long> num(lo, hi);
    std::uniform_int_distribution<long> den(1, max_den);
    return make_rat(num(rng), den(rng));
}

Vec random_vec(std::mt19937_64& rng, Eigen::Index n, long lo, long hi, long max_den) {
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = random_rat(rng, lo, hi, max_den);
    return v;
}

// Random cone with a known strictly positive consistent measure, hence
// arbitrage-free and full support.
GambleSpace random_full_support_cone(std::mt19937_64& rng, Eigen::Index n, int n_gens) {
    Vec p(n);
    Rat total(0);
    std::uniform_int_distribution<long> w(1, 4);
    for (Eigen::Index i = 0; i < n; ++i) {
        p(i) = w(rng);
        total += p(i);
    }
    p /= total;
    std::vector<Vec> gens;
    for (int j = 0; j < n_gens; ++j) {
        Vec h = random_vec(rng, n, -4, 4, 2);
        Rat mean = h.dot(p);
        for (Eigen::Index i = 0; i < n; ++i) h(i) -= mean;
        gens.push_back(std::move(h));
    }
    std::vector<std::string> labels;
    for (Eigen::Index i = 0; i < n; ++i) labels.push_back("w" + std::to_string(i));
    return make_space(std::move(labels), cone_set(gens));
}

GambleSpace pascal_fermat_round() {
    Vec y(2);
    y << -1, 1;
    return make_space({"L", "W"}, cone_set({y, Vec(-y)}));
}

SequentialSpace pascal_fermat_space() {
    Vec y(2);
    y << -1, 1;
    return uniform_sequential_space({"L", "W"}, 2, cone_set({y, Vec(-y)}));
}

Rat net_stake(const Strategy& strategy, const Situation& s) {
    const StrategyChoice& c = strategy.choices.at(s);
    return c.coefficients(0) - c.coefficients(1);
}

CriterionResult criterion_1() {
    Check c;
    Vec y(2);
    y << -1, 1;
    GambleSpace coin = make_space({"-1", "1"}, cone_set({y, Vec(-y)}));
    c.expect(upper_probability(coin, {1}) == ExtReal(make_rat(1, 2)), "upper heads != 1/2");
    c.expect(lower_probability(coin, {1}) == ExtReal(make_rat(1, 2)), "lower heads != 1/2");
    std::vector<Vec> vertices = enumerate_vertices(consistent_polytope(coin));
    c.expect(vertices.size() == 1 && vertices[0](0) == make_rat(1, 2) &&
                 vertices[0](1) == make_rat(1, 2),
             "consistent set is not {(1/2,1/2)}");
    for (long d : {8L, 4L, 2L}) {
        Rat eps = make_rat(1, d);
        Vec g(2);
        g << -1 - 2 * eps, 1 - 2 * eps;
        GambleSpace biased = make_space({"-1", "1"}, cone_set({g, Vec(-g)}));
        Rat price = make_rat(1, 2) + eps;
        c.expect(upper_probability(biased, {1}) == ExtReal(price),
                 "biased upper != 1/2+" + format_rat(eps));
        c.expect(lower_probability(biased, {1}) == ExtReal(price),
                 "biased lower != 1/2+" + format_rat(eps));
    }
    return {1, "fair and biased coins", c.ok, c.detail.str()};
}

CriterionResult criterion_2() {
    Check c;
    Vec omega(5);
    omega << -1, make_rat(-1, 2), 0, make_rat(1, 2), 1;
    GambleSpace grid = make_space({"-1", "-1/2", "0", "1/2", "1"},
                                  cone_set({omega, Vec(-omega)}));
    Vec cubed(5);
    for (Eigen::Index i = 0; i < 5; ++i) cubed(i) = omega(i) * omega(i) * omega(i);
    Variable X{cubed};
    c.expect(upper_expectation(grid, X) == ExtReal(make_rat(1, 4)), "upper cubic != 1/4");
    c.expect(lower_expectation(grid, X) == ExtReal(make_rat(-1, 4)), "lower cubic != -1/4");
    ReplicationCertificate cert = replication_certificate(grid, X);
    c.expect(cert.coefficients(0) == make_rat(3, 4) && cert.coefficients(1) == 0,
             "certificate beta != 3/4");
    return {2, "outcome-interval cubic", c.ok, c.detail.str()};
}

CriterionResult criterion_3() {
    Check c;
    auto variable2 = [](const Rat& a, const Rat& b) {
        return Variable{std::vector<ExtReal>{ExtReal(a), ExtReal(b)}};
    };
    GambleSpace c1 = make_space(
        {"1", "2"}, explicit_set({variable2(2, -1), variable2(-1, 2)}));
    Variable X = variable2(2, -1);
    c.expect(lower_expectation(c1, X) == ExtReal(Rat(1)), "crossed pair lower != 1");
    c.expect(upper_expectation(c1, X) == ExtReal(Rat(0)), "crossed pair upper != 0");
    c.expect(!char_lower_leq_upper(c1), "crossed pair characterization should fail");

    GambleSpace c2 = make_space(
        {"1", "2"}, explicit_set({variable2(4, -2), variable2(-1, 2)}));
    Variable zero = variable2(0, 0);
    auto [value, witness] = measure_upper_witness(c2, zero);
    c.expect(value == ExtReal(make_rat(-2, 3)), "scaled pair measure upper != -2/3");
    c.expect(witness && (*witness)(0) == make_rat(4, 9) && (*witness)(1) == make_rat(5, 9),
             "scaled pair optimal P != (4/9,5/9)");
    c.expect(lower_expectation(c2, zero) == ExtReal(Rat(-1)), "scaled pair lower != -1");
    c.expect(upper_expectation(c2, zero) == ExtReal(Rat(1)), "scaled pair upper != 1");
    return {3, "two-outcome counterexample pair", c.ok, c.detail.str()};
}

CriterionResult criterion_4() {
    Check c;
    SequentialSpace space = pascal_fermat_space();
    Variable X = tabulate_leaves(space, [](const Situation& s) {
        return ExtReal(Rat(s[0] == 1 && s[1] == 1 ? 100 : 0));
    });
    auto [gv, strategy] = gambler_value(space, X);
    auto [wv, kernel] = world_value(space, X);
    c.expect(gv == ExtReal(Rat(25)), "gambler value != 25");
    c.expect(wv == ExtReal(Rat(25)), "world value != 25");
    c.expect(net_stake(strategy, {}) == 25, "root stake != 25");
    c.expect(net_stake(strategy, {1}) == 50, "stake after W != 50");
    c.expect(net_stake(strategy, {0}) == 0, "stake after L != 0");
    Vec uniform(2);
    uniform << make_rat(1, 2), make_rat(1, 2);
    for (const Situation& s : std::vector<Situation>{{}, {0}, {1}})
        c.expect(kernel.at(s) == uniform, "kernel not uniform at " + situation_string(space.alphabet, s));
    c.expect(verify_replication(space, strategy, 25, X), "strategy fails to replicate");

    // Best-of-4 variant with the stated stake table: no bet at the root, then
    // a 25 bet either way.
    Variable X2{std::vector<ExtReal>{ExtReal(Rat(0)), ExtReal(Rat(50)), ExtReal(Rat(50)),
                                     ExtReal(Rat(100))}};
    c.expect(gambler_value(space, X2).first == ExtReal(Rat(50)), "best-of-4 value != 50");
    Strategy stated;
    Vec root = zero_vec(2), later = zero_vec(2);
    later(0) = 25;
    stated.choices[{}] = {root, -1};
    stated.choices[{0}] = {later, -1};
    stated.choices[{1}] = {later, -1};
    c.expect(verify_replication(space, stated, 50, X2),
             "stated root-stake-0 strategy does not replicate from 50");
    return {4, "Pascal-Fermat", c.ok, c.detail.str()};
}

CriterionResult criterion_5() {
    Check c;
    std::mt19937_64 rng(505);
    std::uniform_int_distribution<int> pick_m(2, 4), pick_T(1, 4), pick_g(1, 3);
    for (int i = 0; i < 200 && c.ok; ++i) {
        const int m = pick_m(rng), T = pick_T(rng), g = pick_g(rng);
        GambleSpace round = random_full_support_cone(rng, m, g);
        SequentialSpace space =
            uniform_sequential_space(round.outcome_labels, T, round.gambles);
        Variable X = tabulate_leaves(
            space, [&](const Situation&) { return ExtReal(random_rat(rng, -6, 6, 3)); });
        if (check_minimax(space, X) != ExtReal(Rat(0))) {
            c.expect(false, "nonzero gap at instance " + std::to_string(i));
            break;
        }
        if (m <= 3 && T <= 3) {
            std::vector<Vec> vertices = enumerate_vertices(consistent_polytope(round));
            std::function<ExtReal(Situation&)> brute = [&](Situation& s) -> ExtReal {
                if (static_cast<int>(s.size()) == T) return X(leaf_index(space, s));
                std::vector<ExtReal> child;
                for (int y = 0; y < m; ++y) {
                    s.push_back(y);
                    child.push_back(brute(s));
                    s.pop_back();
                }
                ExtReal best = ExtReal::neg_inf();
                for (const Vec& v : vertices) {
                    Rat e(0);
                    for (int y = 0; y < m; ++y) e += v(y) * child[static_cast<size_t>(y)].finite();
                    if (ExtReal(e) > best) best = ExtReal(e);
                }
                return best;
            };
            Situation s;
            c.expect(world_value(space, X).first == brute(s),
                     "vertex oracle mismatch at instance " + std::to_string(i));
        }
    }
    return {5, "sequential minimax on random full-support cones", c.ok, c.detail.str()};
}

CriterionResult criterion_6() {
    Check c;
    std::mt19937_64 rng(606);
    std::uniform_int_distribution<int> pick_n(2, 3), pick_k(1, 3), pick_rep(0, 2);
    int empties = 0;
    for (int i = 0; i < 500 && c.ok; ++i) {
        const int n = pick_n(rng), k = pick_k(rng), rep = pick_rep(rng);
        std::vector<std::string> labels;
        for (int w = 0; w < n; ++w) labels.push_back("w" + std::to_string(w));
        GambleSet set;
        if (rep == 0) {
            std::vector<Variable> gambles;
            for (int j = 0; j < k; ++j) {
                Variable g{random_vec(rng, n, -4, 4, 2)};
                if (rng() % 8 == 0) g(static_cast<Eigen::Index>(rng() % n)) = ExtReal::pos_inf();
                gambles.push_back(std::move(g));
            }
            set = explicit_set(std::move(gambles));
        } else {
            std::vector<Vec> gens;
            for (int j = 0; j < k; ++j) gens.push_back(random_vec(rng, n, -4, 4, 2));
            set = rep == 1 ? cone_set(gens) : hull_set(gens);
        }
        GambleSpace space = make_space(labels, std::move(set));
        Variable X{random_vec(rng, n, -6, 6, 3)};
        try {
            PriceChain chain = price_chain(space, X);
            if (!chain.delta0_nonempty) ++empties;
        } catch (const Error& e) {
            c.expect(false,
                     std::string("instance ") + std::to_string(i) + ": " + e.what());
        }
    }
    c.detail << (c.detail.tellp() > 0 ? "; " : "") << empties << " empty-consistent instances";
    return {6, "price chain ordering on random instances", c.ok, c.detail.str()};
}

CriterionResult criterion_7() {
    Check c;
    Vec y(3);
    y << -1, 0, 1;
    GambleSet one_sided = cone_set({y});
    for (int T = 2; T <= 5; ++T) {
        SequentialSpace space = uniform_sequential_space({"-1", "0", "1"}, T, one_sided);
        for (const Rat& eps : {make_rat(1, 2), Rat(1), make_rat(3, 2)}) {
            Variable X = tabulate_leaves(space, [&](const Situation& s) {
                Rat sum(0);
                for (int idx : s) sum += idx - 1;
                return ExtReal(Rat(sum >= eps ? 1 : 0));
            });
            ExtReal wv = world_value(space, X).first;
            Rat bound = exp_bounds(Rat(-eps * eps / (2 * T))).hi;
            c.expect(wv.is_finite() && wv.finite() <= bound,
                     "bound fails at T=" + std::to_string(T) + " eps=" + format_rat(eps));
            if (T == 2 && eps == 1)
                c.expect(wv == ExtReal(make_rat(1, 2)), "T=2 eps=1 value != 1/2");
        }
    }
    return {7, "Azuma tail bounds", c.ok, c.detail.str()};
}

CriterionResult criterion_8() {
    Check c;
    std::mt19937_64 rng(808);
    std::uniform_int_distribution<int> pick_m(2, 3), pick_T(2, 5), pick_g(1, 2);
    for (int i = 0; i < 100 && c.ok; ++i) {
        const int m = pick_m(rng), T = pick_T(rng);
        GambleSpace round = random_full_support_cone(rng, m, pick_g(rng));
        SequentialSpace space =
            uniform_sequential_space(round.outcome_labels, T, round.gambles);
        ProcessTable proc;
        Situation s;
        std::function<void(const Rat&)> build = [&](const Rat& v) {
            proc[s] = ExtReal(v);
            if (static_cast<int>(s.size()) == T) return;
            std::vector<Rat> child;
            for (int y = 0; y < m; ++y) {
                Rat r = random_rat(rng, 0, 8, 2);
                child.push_back(r < 0 ? Rat(-r) : r);
            }
            ExtReal u = upper_expectation(round, Variable(from_std(child)));
            if (u > ExtReal(v)) {
                // One-round prices are positively homogeneous on cones.
                Rat scale = u.finite() > 0 ? Rat(v / u.finite()) : Rat(0);
                for (Rat& r : child) r *= scale;
            }
            for (int y = 0; y < m; ++y) {
                s.push_back(y);
                build(child[static_cast<size_t>(y)]);
                s.pop_back();
            }
        };
        build(Rat(1));
        for (const Rat& alpha : {make_rat(1, 4), make_rat(1, 2), Rat(1)}) {
            auto [sup_prob, holds] = ville_bound(space, proc, alpha);
            c.expect(sup_prob <= alpha && holds,
                     "Ville fails at instance " + std::to_string(i) + " alpha=" + format_rat(alpha));
        }
    }
    return {8, "Ville bounds on generated supermartingales", c.ok, c.detail.str()};
}

CriterionResult criterion_9() {
    Check c;
    std::mt19937_64 rng(909);
    std::uniform_int_distribution<int> pick_m(2, 3), pick_g(1, 3);
    for (int i = 0; i < 200 && c.ok; ++i) {
        const int m = pick_m(rng), g = pick_g(rng);
        std::vector<Vec> gens;
        for (int j = 0; j < g; ++j) gens.push_back(random_vec(rng, m, -4, 4, 2));
        std::vector<std::string> labels;
        for (int w = 0; w < m; ++w) labels.push_back("w" + std::to_string(w));
        SequentialSpace space = uniform_sequential_space(labels, 2, cone_set(gens));
        Variable X = tabulate_leaves(
            space, [&](const Situation&) { return ExtReal(random_rat(rng, -6, 6, 3)); });

        // Lifted one-shot oracle on m^2 outcomes: round-one generators depend
        // only on y1; round-two generators act on one subtree each.
        std::vector<Vec> lifted;
        for (const Vec& gen : gens) {
            Vec v(m * m);
            for (int y1 = 0; y1 < m; ++y1)
                for (int y2 = 0; y2 < m; ++y2) v(y1 * m + y2) = gen(y1);
            lifted.push_back(std::move(v));
        }
        for (int s = 0; s < m; ++s) {
            for (const Vec& gen : gens) {
                Vec v = zero_vec(m * m);
                for (int y2 = 0; y2 < m; ++y2) v(s * m + y2) = gen(y2);
                lifted.push_back(std::move(v));
            }
        }
        std::vector<std::string> leaf_labels;
        for (int w = 0; w < m * m; ++w) leaf_labels.push_back("l" + std::to_string(w));
        GambleSpace one_shot = make_space(leaf_labels, cone_set(lifted));
        c.expect(gambler_value(space, X).first == upper_expectation(one_shot, X),
                 "tower mismatch at instance " + std::to_string(i));
    }
    return {9, "tower property on two-round instances", c.ok, c.detail.str()};
}

CriterionResult criterion_10() {
    Check c;
    Mat loss(2, 2);
    loss << 0, 1, 1, 0;
    auto game_at = [&](int T) { return make_game({"a", "b"}, {"0", "1"}, loss, T); };
    c.expect(minimax_regret(game_at(1)) == ExtReal(make_rat(1, 2)), "T=1 regret != 1/2");

    const Rat tol = make_rat(1, 1L << 32);
    for (int T = 1; T <= 6; ++T) {
        OnlineGame game = game_at(T);
        AdmissibilityReport rep = check_admissible(game, exp_weights_relaxation(game), tol);
        c.expect(rep.admissible(), "exp-weights inadmissible at T=" + std::to_string(T));
    }
    {
        OnlineGame game = game_at(8);
        MasterReport master = master_bound_check(game, exp_weights_relaxation(game));
        c.expect(master.passes(), "master bound fails at T=8");
    }
    {
        OnlineGame game = game_at(3);
        AdmissibilityReport rep = check_admissible(game, doob_relaxation(game), Rat(0));
        c.expect(rep.admissible(), "Doob relaxation inadmissible");
    }
    return {10, "online learning regret machinery", c.ok, c.detail.str()};
}

CriterionResult criterion_11() {
    Check c;
    CltCounterexample r = clt_counterexample(10, make_rat(9, 10));
    c.expect(r.k == 10, "k != 10");
    c.expect(r.prob_at_zero >= make_rat(9, 10), "P(sum <= 0) < 9/10");
    c.expect(r.prob_at_zero - make_rat(1, 2) >= make_rat(2, 5), "gap from 1/2 below 2/5");

    Vec y(3), y2(3);
    y << -1, 0, r.k;
    y2 << 0, -1, Rat(r.k) * Rat(r.k) - 1;
    SequentialSpace space = uniform_sequential_space(
        {"-1", "0", "k"}, 2, cone_set({y, Vec(-y), y2, Vec(-y2)}));
    Kernel kernel;
    for (const Situation& s : std::vector<Situation>{{}, {0}, {1}, {2}}) kernel[s] = r.kernel;
    c.expect(is_sequentially_consistent(space, kernel), "kernel not sequentially consistent");
    return {11, "CLT counterexample family", c.ok, c.detail.str()};
}

CriterionResult criterion_12() {
    Check c;
    std::mt19937_64 rng(1212);
    std::uniform_int_distribution<int> pick_n(2, 3), pick_g(1, 3);
    for (int i = 0; i < 50 && c.ok; ++i) {
        GambleSpace space = random_full_support_cone(rng, pick_n(rng), pick_g(rng));
        AxiomReport report = audit_axioms(space, 200, 1000 + static_cast<std::uint64_t>(i));
        c.expect(report.subadditivity_applicable && report.homogeneity_applicable,
                 "cone flags wrong at instance " + std::to_string(i));
        if (!report.passed()) {
            c.expect(false, "axiom violation at instance " + std::to_string(i) + ": " +
                                report.violations.front().axiom);
        }
    }
    GambleSpace singleton = make_space(
        {"1", "2"}, explicit_set({Variable{std::vector<ExtReal>{ExtReal(Rat(1)), ExtReal(Rat(1))}}}));
    Variable zero{std::vector<ExtReal>{ExtReal(Rat(0)), ExtReal(Rat(0))}};
    c.expect(upper_expectation(singleton, zero) == ExtReal(Rat(-1)), "singleton price != -1");
    return {12, "axioms audit", c.ok, c.detail.str()};
}

}  // namespace

std::vector<CriterionResult> run_acceptance() {
    std::vector<std::function<CriterionResult()>> criteria = {
        criterion_1, criterion_2, criterion_3, criterion_4,  criterion_5,  criterion_6,
        criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12};
    std::vector<CriterionResult> results;
    int index = 1;
    for (const auto& run : criteria) {
        try {
            results.push_back(run());
        } catch (const std::exception& e) {
            results.push_back({index, "criterion " + std::to_string(index), false,
                               std::string("exception: ") + e.what()});
        }
        ++index;
    }
    return results;
}

bool report_acceptance(const std::vector<CriterionResult>& results, std::ostream& out) {
    bool all = true;
    for (const auto& r : results) {
        out << (r.passed ? "PASS" : "FAIL") << " criterion " << r.index << ": " << r.name;
        if (!r.detail.empty()) out << " [" << r.detail << "]";
        out << "\n";
        all = all && r.passed;
    }
    return all;
}

}  // namespace gtp
