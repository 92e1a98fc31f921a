#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gtp/ratlp.hpp"

using namespace gtp;

namespace {

Vec vec3(long a, long b, long c) {
    Vec v(3);
    v << Rat(a), Rat(b), Rat(c);
    return v;
}

Vec vec2(long a, long b) {
    Vec v(2);
    v << Rat(a), Rat(b);
    return v;
}

}  // namespace

TEST_CASE("two-variable maximization") {
    // max x + y st x + 2y <= 4, 3x + y <= 6, x,y >= 0; optimum (8/5, 6/5).
    LinearProgram lp;
    lp.maximize = true;
    lp.c = vec2(1, 1);
    lp.add_row(vec2(1, 2), Rel::LE, Rat(4));
    lp.add_row(vec2(3, 1), Rel::LE, Rat(6));
    lp.set_lower(0, Rat(0));
    lp.set_lower(1, Rat(0));
    LPResult r = solve_lp(lp);
    REQUIRE(r.status == LPStatus::Optimal);
    CHECK(r.value == make_rat(14, 5));
    CHECK(r.point(0) == make_rat(8, 5));
    CHECK(r.point(1) == make_rat(6, 5));
    CHECK(duality_audit(lp));
}

TEST_CASE("free variables and equality rows") {
    // min x - y st x + y = 1, x - y >= -3, both free; optimum (-1, 2).
    LinearProgram lp;
    lp.c = vec2(1, -1);
    lp.add_row(vec2(1, 1), Rel::EQ, Rat(1));
    lp.add_row(vec2(1, -1), Rel::GE, Rat(-3));
    LPResult r = solve_lp(lp);
    REQUIRE(r.status == LPStatus::Optimal);
    CHECK(r.value == Rat(-3));
    CHECK(r.point(0) == Rat(-1));
    CHECK(r.point(1) == Rat(2));
    CHECK(duality_audit(lp));
}

TEST_CASE("infeasible and unbounded statuses") {
    LinearProgram bad;
    bad.c = vec2(1, 0);
    bad.add_row(vec2(1, 1), Rel::LE, Rat(0));
    bad.add_row(vec2(1, 1), Rel::GE, Rat(1));
    CHECK(solve_lp(bad).status == LPStatus::Infeasible);

    LinearProgram unb;
    unb.maximize = true;
    unb.c = vec2(1, 0);
    unb.add_row(vec2(0, 1), Rel::LE, Rat(1));
    CHECK(solve_lp(unb).status == LPStatus::Unbounded);

    LinearProgram crossed;
    crossed.c = vec2(0, 0);
    crossed.set_lower(0, Rat(2));
    crossed.set_upper(0, Rat(1));
    CHECK(solve_lp(crossed).status == LPStatus::Infeasible);
}

TEST_CASE("degenerate objective does not cycle") {
    // Classic Beale-style degeneracy; Bland's rule must terminate.
    LinearProgram lp;
    lp.c = Vec(4);
    lp.c << make_rat(-3, 4), Rat(150), make_rat(-1, 50), Rat(6);
    Vec r1(4), r2(4), r3(4);
    r1 << make_rat(1, 4), Rat(-60), make_rat(-1, 25), Rat(9);
    r2 << make_rat(1, 2), Rat(-90), make_rat(-1, 50), Rat(3);
    r3 << Rat(0), Rat(0), Rat(1), Rat(0);
    lp.add_row(r1, Rel::LE, Rat(0));
    lp.add_row(r2, Rel::LE, Rat(0));
    lp.add_row(r3, Rel::LE, Rat(1));
    for (Eigen::Index j = 0; j < 4; ++j) lp.set_lower(j, Rat(0));
    LPResult r = solve_lp(lp);
    REQUIRE(r.status == LPStatus::Optimal);
    CHECK(r.value == make_rat(-1, 20));
    CHECK(duality_audit(lp));
}

TEST_CASE("lexmin picks the smallest optimal point") {
    // max x + y on the unit square: whole edge x + y = ... no, the optimum
    // face is the single vertex (1,1); use objective x to get a face.
    LinearProgram lp;
    lp.maximize = true;
    lp.c = vec2(1, 0);
    lp.set_lower(0, Rat(0));
    lp.set_upper(0, Rat(1));
    lp.set_lower(1, Rat(0));
    lp.set_upper(1, Rat(1));
    LPResult r = solve_lp_lexmin(lp);
    REQUIRE(r.status == LPStatus::Optimal);
    CHECK(r.value == Rat(1));
    CHECK(r.point(0) == Rat(1));
    CHECK(r.point(1) == Rat(0));
}

TEST_CASE("lexmin on an unbounded face raises") {
    LinearProgram lp;
    lp.maximize = true;
    lp.c = vec2(1, 0);
    lp.set_upper(0, Rat(1));
    CHECK_THROWS_WITH_AS(solve_lp_lexmin(lp), doctest::Contains("UnboundedFace"), Error);
}

TEST_CASE("fold_bounds preserves the optimum") {
    LinearProgram lp;
    lp.maximize = true;
    lp.c = vec2(2, 3);
    lp.add_row(vec2(1, 1), Rel::LE, Rat(3));
    lp.set_lower(0, Rat(0));
    lp.set_lower(1, Rat(1));
    lp.set_upper(1, Rat(2));
    LinearProgram folded = fold_bounds(lp);
    CHECK(folded.lower.empty());
    CHECK(folded.upper.empty());
    LPResult a = solve_lp(lp), b = solve_lp(folded);
    REQUIRE(a.status == LPStatus::Optimal);
    REQUIRE(b.status == LPStatus::Optimal);
    CHECK(a.value == b.value);
    CHECK(a.value == Rat(8));
}

TEST_CASE("duality audit on random programs") {
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<long> coef(-6, 6), den(1, 3), relpick(0, 2);
    int optimal_seen = 0;
    for (int trial = 0; trial < 120; ++trial) {
        std::uniform_int_distribution<long> dims(1, 4);
        const Eigen::Index n = dims(rng), m = dims(rng);
        LinearProgram lp;
        lp.maximize = trial % 2 == 0;
        lp.c = Vec::Constant(n, Rat(0));
        for (Eigen::Index j = 0; j < n; ++j) lp.c(j) = make_rat(coef(rng), den(rng));
        for (Eigen::Index i = 0; i < m; ++i) {
            Vec row = Vec::Constant(n, Rat(0));
            for (Eigen::Index j = 0; j < n; ++j) row(j) = make_rat(coef(rng), den(rng));
            Rel rel = static_cast<Rel>(relpick(rng));
            lp.add_row(std::move(row), rel, make_rat(coef(rng), den(rng)));
        }
        // Box part of the trials to get a healthy share of Optimal statuses.
        if (trial % 3 != 0) {
            for (Eigen::Index j = 0; j < n; ++j) {
                lp.set_lower(j, Rat(-5));
                lp.set_upper(j, Rat(5));
            }
        }
        if (solve_lp(lp).status == LPStatus::Optimal) ++optimal_seen;
        CHECK(duality_audit(lp));
    }
    CHECK(optimal_seen > 40);
}

TEST_CASE("vertices of the standard simplex") {
    Polytope p;
    Constraint sum;
    sum.row = vec3(1, 1, 1);
    sum.rel = Rel::EQ;
    sum.rhs = Rat(1);
    p.h_rep.push_back(sum);
    for (int j = 0; j < 3; ++j) {
        Constraint pos;
        pos.row = vec3(j == 0, j == 1, j == 2);
        pos.rel = Rel::GE;
        pos.rhs = Rat(0);
        p.h_rep.push_back(pos);
    }
    auto vs = enumerate_vertices(p);
    REQUIRE(vs.size() == 3);
    CHECK(vs[0] == vec3(0, 0, 1));
    CHECK(vs[1] == vec3(0, 1, 0));
    CHECK(vs[2] == vec3(1, 0, 0));
}

TEST_CASE("vertices of a cube with a redundant row") {
    Polytope p;
    for (int j = 0; j < 2; ++j) {
        Constraint up, lo;
        up.row = vec2(j == 0, j == 1);
        up.rel = Rel::LE;
        up.rhs = Rat(1);
        lo.row = up.row;
        lo.rel = Rel::GE;
        lo.rhs = Rat(-1);
        p.h_rep.push_back(up);
        p.h_rep.push_back(lo);
    }
    Constraint redundant;
    redundant.row = vec2(1, 1);
    redundant.rel = Rel::LE;
    redundant.rhs = Rat(10);
    p.h_rep.push_back(redundant);
    auto vs = enumerate_vertices(p);
    CHECK(vs.size() == 4);
}

TEST_CASE("vertex enumeration guards") {
    Polytope half;
    Constraint c;
    c.row = vec2(1, 0);
    c.rel = Rel::LE;
    c.rhs = Rat(0);
    half.h_rep.push_back(c);
    c.row = vec2(0, 1);
    half.h_rep.push_back(c);
    CHECK_THROWS_WITH_AS(enumerate_vertices(half), doctest::Contains("Unbounded"), Error);
    // Without the boundedness probe the recession cone's apex is still found.
    auto vs = enumerate_vertices(half, 8, false);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0] == vec2(0, 0));

    Polytope big;
    Constraint wide;
    wide.row = Vec::Constant(9, Rat(1));
    wide.rel = Rel::LE;
    wide.rhs = Rat(1);
    big.h_rep.push_back(wide);
    CHECK_THROWS_WITH_AS(enumerate_vertices(big), doctest::Contains("DimensionCap"), Error);

    Polytope empty;
    c.row = vec2(1, 0);
    c.rel = Rel::GE;
    c.rhs = Rat(1);
    empty.h_rep.push_back(c);
    c.rel = Rel::LE;
    c.rhs = Rat(0);
    empty.h_rep.push_back(c);
    c.row = vec2(0, 1);
    c.rel = Rel::EQ;
    c.rhs = Rat(0);
    empty.h_rep.push_back(c);
    CHECK(enumerate_vertices(empty).empty());
}
