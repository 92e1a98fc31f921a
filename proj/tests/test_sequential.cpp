#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "gtp/sequential.hpp"

using namespace gtp;

namespace {

Vec vec2(long a, long b) {
    Vec v(2);
    v << Rat(a), Rat(b);
    return v;
}

GambleSet fair_coin_set() { return cone_set({vec2(-1, 1), vec2(1, -1)}); }

// Win the match on two straight wins; alphabet index 0 = L, 1 = W.
SequentialSpace best_of_two() {
    return uniform_sequential_space({"L", "W"}, 2, fair_coin_set());
}

Variable match_payoff(const SequentialSpace& space) {
    return tabulate_leaves(space, [](const Situation& s) {
        return ExtReal(Rat(s[0] == 1 && s[1] == 1 ? 100 : 0));
    });
}

}  // namespace

TEST_CASE("situation strings and leaf indexing") {
    SequentialSpace space = best_of_two();
    CHECK(situation_string(space.alphabet, {}) == "@");
    CHECK(situation_string(space.alphabet, {1, 0}) == "W.L");
    CHECK(space.leaf_count() == 4);
    CHECK(leaf_index(space, {0, 0}) == 0);
    CHECK(leaf_index(space, {1, 1}) == 3);
    CHECK_THROWS_WITH_AS(leaf_index(space, {1}), doctest::Contains("BadInput"), Error);
    CHECK_THROWS_WITH_AS(leaf_index(space, {1, 5}), doctest::Contains("BadInput"), Error);

    Variable X = match_payoff(space);
    CHECK(X(3) == ExtReal(Rat(100)));
    CHECK(X(1) == ExtReal(Rat(0)));
}

TEST_CASE("two-round match values") {
    SequentialSpace space = best_of_two();
    Variable X = match_payoff(space);

    auto [gv, strategy] = gambler_value(space, X);
    CHECK(gv == ExtReal(Rat(25)));
    auto [wv, kernel] = world_value(space, X);
    CHECK(wv == ExtReal(Rat(25)));
    CHECK(check_minimax(space, X) == ExtReal(Rat(0)));

    ProcessTable doob = doob_process(space, X);
    CHECK(doob.at({}) == ExtReal(Rat(25)));
    CHECK(doob.at({0}) == ExtReal(Rat(0)));
    CHECK(doob.at({1}) == ExtReal(Rat(50)));
    CHECK(doob.at({1, 1}) == ExtReal(Rat(100)));
    CHECK(conditional_upper(space, X, {1}) == ExtReal(Rat(50)));
    CHECK(is_gt_supermartingale(space, doob));

    Vec uniform(2);
    uniform << make_rat(1, 2), make_rat(1, 2);
    for (const Situation& s : std::vector<Situation>{{}, {0}, {1}})
        CHECK(kernel.at(s) == uniform);
    CHECK(is_sequentially_consistent(space, kernel));
    CHECK(kernel_expectation(space, kernel, X) == Rat(25));

    CHECK(verify_replication(space, strategy, 25, X));
    CHECK_FALSE(verify_replication(space, strategy, 24, X));
    ProcessTable capital = strategy_capital(space, strategy, 25);
    CHECK(capital.at({1}) == ExtReal(Rat(50)));
    CHECK(capital.at({0}) == ExtReal(Rat(0)));
    CHECK(capital.at({1, 1}) == ExtReal(Rat(100)));
    CHECK(capital.at({1, 0}) == ExtReal(Rat(0)));

    SeqPriceChain chain = seq_price_chain(space, X);
    for (const ExtReal& v : {chain.lower_g, chain.lower_star, chain.upper_star, chain.upper_g})
        CHECK(v == ExtReal(Rat(25)));
}

TEST_CASE("supermartingale check rejects a shortfall") {
    SequentialSpace space = best_of_two();
    ProcessTable proc = doob_process(space, match_payoff(space));
    proc[{}] = ExtReal(Rat(10));  // children still price at 25
    CHECK_FALSE(is_gt_supermartingale(space, proc));
}

TEST_CASE("inconsistent nodes are reported") {
    SequentialSpace space = uniform_sequential_space({"a", "b"}, 1, cone_set({vec2(1, 1)}));
    Variable X{std::vector<ExtReal>{ExtReal(Rat(0)), ExtReal(Rat(1))}};
    CHECK_THROWS_WITH_AS(world_value(space, X), doctest::Contains("InconsistentNode"), Error);
}

TEST_CASE("degenerate horizons and table spaces") {
    SequentialSpace flat = uniform_sequential_space({"a", "b"}, 0, fair_coin_set());
    CHECK(flat.leaf_count() == 1);
    Variable seven{std::vector<ExtReal>{ExtReal(Rat(7))}};
    auto [v, strategy] = gambler_value(flat, seven);
    CHECK(v == ExtReal(Rat(7)));
    CHECK(verify_replication(flat, strategy, 7, seven));

    CHECK_THROWS_WITH_AS(uniform_sequential_space({"a"}, -1, fair_coin_set()),
                         doctest::Contains("BadInput"), Error);
    CHECK_THROWS_WITH_AS(table_sequential_space({"a", "b"}, 0, {}),
                         doctest::Contains("BadInput"), Error);

    // Per-node table: a fair round, then a round priced 3:1 toward outcome b.
    Vec tilted(2);
    tilted << Rat(-3), Rat(1);
    std::map<Situation, GambleSet> table;
    table[{}] = fair_coin_set();
    table[{0}] = cone_set({tilted, Vec(-tilted)});
    table[{1}] = cone_set({tilted, Vec(-tilted)});
    SequentialSpace two = table_sequential_space({"a", "b"}, 2, std::move(table));
    Variable last_b = tabulate_leaves(two, [](const Situation& s) {
        return ExtReal(Rat(s[1] == 1 ? 1 : 0));
    });
    // Second-round law is (1/4, 3/4) whatever happened first.
    CHECK(gambler_value(two, last_b).first == ExtReal(make_rat(3, 4)));

    std::map<Situation, GambleSet> partial;
    partial[{}] = fair_coin_set();
    SequentialSpace holes = table_sequential_space({"a", "b"}, 2, std::move(partial));
    CHECK_THROWS_WITH_AS(gambler_value(holes, last_b), doctest::Contains("BadInput"), Error);
}

TEST_CASE("strategy payoff by explicit index") {
    GambleSet set = explicit_set({Variable(vec2(2, -1)), Variable(vec2(-1, 2))});
    SequentialSpace space = uniform_sequential_space({"a", "b"}, 1, set);
    Strategy strategy;
    strategy.choices[{}] = {Vec(), 1};
    CHECK(strategy_payoff(space, strategy, {}, 0) == ExtReal(Rat(-1)));
    CHECK(strategy_payoff(space, strategy, {}, 1) == ExtReal(Rat(2)));
    CHECK_THROWS_WITH_AS(strategy_payoff(space, strategy, {1}, 0),
                         doctest::Contains("BadInput"), Error);
}

TEST_CASE("ville bound for doubling-or-bust") {
    SequentialSpace space = best_of_two();
    ProcessTable proc;
    proc[{}] = ExtReal(Rat(1));
    proc[{0}] = ExtReal(Rat(0));
    proc[{1}] = ExtReal(Rat(2));
    proc[{0, 0}] = ExtReal(Rat(0));
    proc[{0, 1}] = ExtReal(Rat(0));
    proc[{1, 0}] = ExtReal(Rat(0));
    proc[{1, 1}] = ExtReal(Rat(4));
    REQUIRE(is_gt_supermartingale(space, proc));

    auto [p_half, ok_half] = ville_bound(space, proc, make_rat(1, 2));
    CHECK(p_half == make_rat(1, 2));
    CHECK(ok_half);
    auto [p_quarter, ok_quarter] = ville_bound(space, proc, make_rat(1, 4));
    CHECK(p_quarter == make_rat(1, 4));
    CHECK(ok_quarter);
    auto [p_one, ok_one] = ville_bound(space, proc, Rat(1));
    CHECK(p_one == Rat(1));
    CHECK(ok_one);

    ProcessTable ones;
    for (const auto& [s, v] : proc) ones[s] = ExtReal(Rat(1));
    auto [never, ok_never] = ville_bound(space, ones, make_rat(1, 2));
    CHECK(never == Rat(0));
    CHECK(ok_never);

    CHECK_THROWS_WITH_AS(ville_bound(space, proc, Rat(0)), doctest::Contains("BadInput"), Error);
    CHECK_THROWS_WITH_AS(ville_bound(space, proc, Rat(2)), doctest::Contains("BadInput"), Error);
    ProcessTable bad_root = proc;
    bad_root[{}] = ExtReal(Rat(2));
    CHECK_THROWS_WITH_AS(ville_bound(space, bad_root, make_rat(1, 2)),
                         doctest::Contains("BadInput"), Error);
}

TEST_CASE("heavy-tailed law beats the normal limit") {
    CltCounterexample small = clt_counterexample(1, make_rat(1, 4));
    CHECK(small.k == 1);
    CHECK(small.prob_at_zero == make_rat(1, 2));

    CltCounterexample mid = clt_counterexample(1, make_rat(1, 2));
    CHECK(mid.k == 2);
    CHECK(mid.prob_at_zero == make_rat(5, 6));
    CHECK(mid.kernel(0) == make_rat(1, 3));
    CHECK(mid.kernel(1) == make_rat(1, 2));
    CHECK(mid.kernel(2) == make_rat(1, 6));

    CHECK_THROWS_WITH_AS(clt_counterexample(0, make_rat(1, 2)),
                         doctest::Contains("BadInput"), Error);
    CHECK_THROWS_WITH_AS(clt_counterexample(3, Rat(1)), doctest::Contains("BadInput"), Error);
}

TEST_CASE("node cap guards tree blowup") {
    setenv("GW_NODE_CAP", "5", 1);
    CHECK_THROWS_WITH_AS(uniform_sequential_space({"a", "b"}, 3, fair_coin_set()),
                         doctest::Contains("NodeCap"), Error);
    unsetenv("GW_NODE_CAP");
    SequentialSpace fine = uniform_sequential_space({"a", "b"}, 3, fair_coin_set());
    CHECK(fine.leaf_count() == 8);
}
