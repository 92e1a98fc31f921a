#include "gtp/betting.hpp"

namespace gtp {

namespace {

Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

}  // namespace

CapitalPath run_capital(const BettingStrategy& strategy, const std::vector<Rat>& ys,
                        const Rat& initial) {
    if (initial < 0) fail("BadInput", "initial capital must be nonnegative");
    CapitalPath path;
    path.capitals.push_back(initial);
    std::vector<Rat> history;
    for (const Rat& y : ys) {
        if (rat_abs(y) > 1) fail("BadInput", "outcomes must lie in [-1,1]");
        Rat stake = strategy.stake(history, path.capitals.back());
        Rat next = path.capitals.back() + stake * y;
        if (next < 0) path.bankrupt = true;
        path.outcomes.push_back(y);
        path.stakes.push_back(std::move(stake));
        path.capitals.push_back(std::move(next));
        history.push_back(y);
    }
    return path;
}

std::vector<Rat> to_multiplicative(const CapitalPath& path) {
    for (const Rat& c : path.capitals)
        if (c < 0) fail("Bankrupt", "negative capital has no multiplicative form");
    std::vector<Rat> factors;
    Rat rebuilt = path.capitals.front();
    for (size_t t = 1; t < path.capitals.size(); ++t) {
        const Rat& prev = path.capitals[t - 1];
        Rat e = prev > 0 ? Rat(path.capitals[t] / prev) : Rat(0);
        rebuilt *= e;
        if (rebuilt != path.capitals[t])
            fail("Internal", "multiplicative reconstruction mismatch");
        factors.push_back(std::move(e));
    }
    return factors;
}

bool evariable_check(const GambleSpace& one_round_space, const Variable& E) {
    if (!E.is_real()) fail("BadInput", "e-variable must be real-valued");
    if (E.size() != one_round_space.n()) fail("BadInput", "variable length mismatch");
    Variable Z;
    for (const auto& x : E.values) {
        if (x.finite() < 0) fail("BadInput", "e-variable must be nonnegative");
        Z.values.push_back(ExtReal(x.finite() - 1));
    }
    return dcl_membership(one_round_space, Z);
}

BettingStrategy kt_strategy() {
    BettingStrategy s;
    s.label = "kt";
    s.stake = [](const std::vector<Rat>& history, const Rat& capital) {
        // alpha_t = (1/t) * sum of the first t-1 outcomes.
        if (history.empty()) return Rat(0);
        Rat sum(0);
        for (const Rat& y : history) sum += y;
        return Rat(sum / (static_cast<long>(history.size()) + 1) * capital);
    };
    return s;
}

BettingStrategy constant_fraction(const Rat& a) {
    if (rat_abs(a) > 1) fail("BadInput", "fraction must lie in [-1,1]");
    BettingStrategy s;
    s.label = "constant_fraction(" + format_rat(a) + ")";
    s.stake = [a](const std::vector<Rat>&, const Rat& capital) { return Rat(a * capital); };
    return s;
}

AzumaStrategy azuma_strategy(const Rat& eps, long T) {
    if (!(eps > 0)) fail("BadInput", "eps must be positive");
    if (T < 1) fail("BadInput", "T must be positive");

    AzumaStrategy out;
    out.eps = eps;
    out.T = T;
    Rat eps2 = eps * eps;
    out.initial = exp_bounds(Rat(-eps2 / (2 * T)));

    Bounds ep = exp_bounds(eps);
    Bounds em = exp_bounds(Rat(-eps));
    Bounds den = exp_bounds(Rat(-2 * eps2));
    Rat num_lo = ep.lo - em.hi, num_hi = ep.hi - em.lo;
    if (num_lo < 0) num_lo = 0;
    out.fraction = {Rat(num_lo / (2 * den.hi)), Rat(num_hi / (2 * den.lo))};

    out.strategy.label = "azuma(" + format_rat(eps) + "," + std::to_string(T) + ")";
    Rat frac = out.fraction.hi;
    out.strategy.stake = [frac](const std::vector<Rat>&, const Rat& capital) {
        return Rat(frac * capital);
    };
    return out;
}

LlnGrowth lln_growth_check(const Rat& a, const std::vector<Rat>& ys, const Rat& delta) {
    if (rat_abs(a) >= 1) fail("BadInput", "fraction must lie in (-1,1)");
    if (!(delta > 0)) fail("BadInput", "delta must be positive");
    LlnGrowth out;
    out.capital = 1;
    Rat sum(0);
    for (const Rat& y : ys) {
        if (rat_abs(y) > 1) fail("BadInput", "outcomes must lie in [-1,1]");
        out.capital *= 1 + a * y;
        sum += y;
    }
    const long T = static_cast<long>(ys.size());
    Rat per_step = 1 + a * delta - a * a;
    out.bound = 1;
    for (long t = 0; t < T; ++t) out.bound *= per_step;
    out.log_capital_lower = out.capital > 0 ? log_bounds(out.capital).lo : Rat(0);
    out.applicable = T > 0 && a > 0 && a <= delta && sum >= delta * T;
    out.passes = !out.applicable || out.capital >= out.bound;
    return out;
}

}  // namespace gtp
