#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gtp/approx.hpp"
#include "gtp/onlinelearn.hpp"

using namespace gtp;

namespace {

OnlineGame pennies(int horizon) {
    Mat loss(2, 2);
    loss << Rat(0), Rat(1), Rat(1), Rat(0);
    return make_game({"call0", "call1"}, {"0", "1"}, loss, horizon);
}

OnlineGame dominated(int horizon) {
    // Second expert loses a point every round no matter what.
    Mat loss(2, 2);
    loss << Rat(0), Rat(0), Rat(1), Rat(1);
    return make_game({"sharp", "dull"}, {"0", "1"}, loss, horizon);
}

}  // namespace

TEST_CASE("game construction guards") {
    Mat loss(2, 2);
    loss << Rat(0), Rat(1), Rat(1), Rat(0);
    CHECK_THROWS_WITH_AS(make_game({}, {"0"}, loss, 1), doctest::Contains("BadInput"), Error);
    CHECK_THROWS_WITH_AS(make_game({"a", "b"}, {"0"}, loss, 1),
                         doctest::Contains("BadInput"), Error);
    CHECK_THROWS_WITH_AS(make_game({"a", "b"}, {"0", "1"}, loss, -1),
                         doctest::Contains("BadInput"), Error);
}

TEST_CASE("benchmark variable and minimax regret") {
    auto [space, X] = game_to_space(pennies(2));
    CHECK(space.horizon == 2);
    CHECK(space.m() == 2);
    // Benchmark is minus the best expert's total: 0 on constant sequences
    // (one expert is perfect), -1 on mixed ones.
    CHECK(X(leaf_index(space, {0, 0})) == ExtReal(Rat(0)));
    CHECK(X(leaf_index(space, {0, 1})) == ExtReal(Rat(-1)));
    CHECK(X(leaf_index(space, {1, 0})) == ExtReal(Rat(-1)));
    CHECK(X(leaf_index(space, {1, 1})) == ExtReal(Rat(0)));

    CHECK(minimax_regret(pennies(1)) == ExtReal(make_rat(1, 2)));
    CHECK(minimax_regret(pennies(2)) == ExtReal(make_rat(1, 2)));
    CHECK(minimax_regret(pennies(3)) == ExtReal(make_rat(3, 4)));
    CHECK(minimax_regret(dominated(3)) == ExtReal(Rat(0)));
}

TEST_CASE("doob relaxation is exactly admissible") {
    OnlineGame game = pennies(3);
    Relaxation doob = doob_relaxation(game);
    CHECK(doob.value({}) == ExtReal(make_rat(3, 4)));
    AdmissibilityReport rep = check_admissible(game, doob, Rat(0));
    CHECK(rep.admissible());
}

TEST_CASE("constant-zero relaxation fails admissibility") {
    Relaxation flat{"zero", [](const Situation&) { return ExtReal(Rat(0)); }};

    // One-step failure: the inner value at the root is 1/2 > 0.
    AdmissibilityReport rep = check_admissible(pennies(1), flat, Rat(0));
    CHECK_FALSE(rep.admissible());
    CHECK(rep.violations[0].detail.find("one-step") == 0);

    // Terminal failure needs a positive benchmark, i.e. negative losses.
    Mat gain(2, 2);
    gain << Rat(-1), Rat(0), Rat(0), Rat(-1);
    OnlineGame generous = make_game({"a", "b"}, {"0", "1"}, gain, 1);
    AdmissibilityReport rep2 = check_admissible(generous, flat, Rat(0));
    CHECK_FALSE(rep2.admissible());
    bool saw_terminal = false;
    for (const auto& v : rep2.violations)
        if (v.detail.find("terminal") == 0) saw_terminal = true;
    CHECK(saw_terminal);

    CHECK_THROWS_WITH_AS(check_admissible(pennies(1), flat, Rat(-1)),
                         doctest::Contains("BadInput"), Error);
}

TEST_CASE("exp-weights relaxation is admissible and near-optimal") {
    OnlineGame game = pennies(4);
    Relaxation ew = exp_weights_relaxation(game);
    Relaxation doob = doob_relaxation(game);
    Rat tol = make_rat(1, 1L << 32);
    AdmissibilityReport rep = check_admissible(game, ew, tol);
    CHECK(rep.admissible());

    ExtReal root = ew.value({});
    REQUIRE(root.is_finite());
    CHECK(doob.value({}) <= root);
    // Classic guarantee: root value near 2 sqrt(2 T log 2); the certified
    // search lands slightly above the ideal optimum, never far.
    Rat cap = 2 * sqrt_bounds(Rat(8) * log_bounds(Rat(2)).hi).hi;
    CHECK(root.finite() <= cap + make_rat(1, 1000));
}

TEST_CASE("meta step distributions") {
    OnlineGame game = pennies(1);
    Vec q = meta_step(game, doob_relaxation(game), {});
    REQUIRE(q.size() == 2);
    CHECK(q(0) == make_rat(1, 2));
    CHECK(q(1) == make_rat(1, 2));

    OnlineGame dom = dominated(2);
    Vec qd = meta_step(dom, doob_relaxation(dom), {});
    CHECK(qd(0) == Rat(1));
    CHECK(qd(1) == Rat(0));

    CHECK_THROWS_WITH_AS(meta_step(game, doob_relaxation(game), {0}),
                         doctest::Contains("BadInput"), Error);
}

TEST_CASE("master bound check") {
    OnlineGame game = pennies(3);
    MasterReport doob_rep = master_bound_check(game, doob_relaxation(game), Rat(0));
    CHECK(doob_rep.root == ExtReal(make_rat(3, 4)));
    CHECK(doob_rep.supermartingale);
    CHECK(doob_rep.failing_sequences.empty());
    CHECK(doob_rep.passes());

    MasterReport ew_rep = master_bound_check(game, exp_weights_relaxation(game));
    CHECK(ew_rep.passes());

    Relaxation flat{"zero", [](const Situation&) { return ExtReal(Rat(0)); }};
    MasterReport bad = master_bound_check(game, flat, Rat(0));
    CHECK_FALSE(bad.supermartingale);
    CHECK_FALSE(bad.failing_sequences.empty());

    CHECK_THROWS_WITH_AS(master_bound_check(pennies(9), flat), doctest::Contains("NodeCap"),
                         Error);
}
