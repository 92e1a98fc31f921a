#include "gtp/gamblespace.hpp"

namespace gtp {

Vec Variable::as_vec() const {
    Vec v(size());
    for (Eigen::Index i = 0; i < size(); ++i) v(i) = (*this)(i).finite();
    return v;
}

Variable Variable::operator-() const {
    Variable out;
    out.values.reserve(values.size());
    for (const auto& x : values) out.values.push_back(-x);
    return out;
}

Mat GambleSet::generator_matrix(Eigen::Index n_outcomes) const {
    Mat G(count(), n_outcomes);
    for (Eigen::Index i = 0; i < count(); ++i) {
        const Variable& g = gambles[static_cast<size_t>(i)];
        if (g.size() != n_outcomes) fail("BadInput", "gamble length mismatch");
        for (Eigen::Index j = 0; j < n_outcomes; ++j) G(i, j) = g(j).finite();
    }
    return G;
}

GambleSet explicit_set(std::vector<Variable> gambles) {
    // -inf entries never price anything; prune at construction.
    GambleSet set;
    set.rep = GambleRep::Explicit;
    for (auto& g : gambles) {
        bool has_neg_inf = false;
        for (const auto& x : g.values)
            if (x.is_neg_inf()) has_neg_inf = true;
        if (!has_neg_inf) set.gambles.push_back(std::move(g));
    }
    return set;
}

namespace {

GambleSet generator_set(GambleRep rep, const std::vector<Vec>& generators) {
    GambleSet set;
    set.rep = rep;
    for (const auto& g : generators) set.gambles.emplace_back(g);
    return set;
}

}  // namespace

GambleSet cone_set(const std::vector<Vec>& generators) {
    return generator_set(GambleRep::Cone, generators);
}

GambleSet hull_set(const std::vector<Vec>& generators) {
    if (generators.empty()) fail("BadInput", "hull needs at least one generator");
    return generator_set(GambleRep::Hull, generators);
}

GambleSpace make_space(std::vector<std::string> labels, GambleSet set) {
    if (labels.empty()) fail("BadInput", "gamble space needs at least one outcome");
    const Eigen::Index n = static_cast<Eigen::Index>(labels.size());
    for (const auto& g : set.gambles) {
        if (g.size() != n) fail("BadInput", "gamble length mismatch");
        if (set.rep != GambleRep::Explicit && !g.is_real())
            fail("BadInput", "cone/hull generators must be real-valued");
    }
    return GambleSpace{std::move(labels), std::move(set)};
}

namespace {

ExtReal gamble_inf(const Variable& g) { return inf_finite_list(g.values); }

// Largest achievable worst-case payoff over normalized coefficient vectors.
// Positive optimum means some combination is strictly positive everywhere.
bool combination_arbitrage(const GambleSpace& space) {
    const Eigen::Index n = space.n();
    const Eigen::Index k = space.gambles.count();
    if (k == 0) return false;
    Mat G = space.gambles.generator_matrix(n);
    // Variables: (alpha_1..alpha_k, t); maximize t st G'alpha >= t, alpha >= 0, sum alpha = 1.
    LinearProgram lp;
    lp.maximize = true;
    lp.c = zero_vec(k + 1);
    lp.c(k) = 1;
    for (Eigen::Index j = 0; j < k; ++j) lp.set_lower(j, Rat(0));
    for (Eigen::Index w = 0; w < n; ++w) {
        Vec row = zero_vec(k + 1);
        for (Eigen::Index j = 0; j < k; ++j) row(j) = G(j, w);
        row(k) = -1;
        lp.add_row(std::move(row), Rel::GE, Rat(0));
    }
    Vec ones = zero_vec(k + 1);
    for (Eigen::Index j = 0; j < k; ++j) ones(j) = 1;
    lp.add_row(std::move(ones), Rel::EQ, Rat(1));
    LPResult r = solve_lp(lp);
    if (r.status != LPStatus::Optimal) fail("Internal", "arbitrage LP not optimal");
    return r.value > 0;
}

}  // namespace

bool is_arbitrage_free(const GambleSpace& space) {
    if (space.gambles.rep == GambleRep::Explicit) {
        for (const auto& g : space.gambles.gambles)
            if (gamble_inf(g) > ExtReal(0)) return false;
        return true;
    }
    return !combination_arbitrage(space);
}

bool sum_is_arbitrage_free(const GambleSpace& space) {
    switch (space.gambles.rep) {
        case GambleRep::Hull:
            fail("UnsupportedRepresentation", "sum_is_arbitrage_free on hull");
        case GambleRep::Cone:
            // A cone is closed under addition.
            return is_arbitrage_free(space);
        case GambleRep::Explicit: {
            const auto& zs = space.gambles.gambles;
            for (const auto& zi : zs) {
                for (const auto& zj : zs) {
                    std::vector<ExtReal> sum;
                    sum.reserve(zi.values.size());
                    for (size_t w = 0; w < zi.values.size(); ++w)
                        sum.push_back(zi.values[w] + zj.values[w]);
                    if (inf_finite_list(sum) > ExtReal(0)) return false;
                }
            }
            return true;
        }
    }
    fail("Internal", "unreachable");
}

GambleSpace prune_useless(const GambleSpace& space, const Variable& X) {
    if (space.gambles.rep != GambleRep::Explicit)
        fail("UnsupportedRepresentation", "prune_useless needs an explicit set");
    if (X.size() != space.n()) fail("BadInput", "variable length mismatch");
    GambleSpace out = space;
    out.gambles.gambles.clear();
    for (const auto& g : space.gambles.gambles) {
        bool bad = false;
        for (const auto& x : g.values)
            if (x.is_neg_inf()) bad = true;
        if (!bad) {
            std::vector<ExtReal> shortfall;
            shortfall.reserve(g.values.size());
            for (Eigen::Index w = 0; w < g.size(); ++w)
                shortfall.push_back(sub_pessimistic(X(w), g(w)));
            if (sup_finite_list(shortfall).is_pos_inf()) bad = true;
        }
        if (!bad) out.gambles.gambles.push_back(g);
    }
    return out;
}

GambleSpace restrict_bounded_below(const GambleSpace& space) {
    if (space.gambles.rep != GambleRep::Explicit)
        fail("UnsupportedRepresentation", "restrict_bounded_below needs an explicit set");
    GambleSpace out = space;
    out.gambles.gambles.clear();
    for (const auto& g : space.gambles.gambles)
        if (gamble_inf(g).is_finite() || gamble_inf(g).is_pos_inf())
            out.gambles.gambles.push_back(g);
    return out;
}

}  // namespace gtp
