#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gtp/approx.hpp"
#include "gtp/pricing.hpp"

namespace gtp {

// Stake rule given the observed history and the current capital.
struct BettingStrategy {
    std::string label;
    std::function<Rat(const std::vector<Rat>&, const Rat&)> stake;
};

struct CapitalPath {
    std::vector<Rat> outcomes;
    std::vector<Rat> capitals;  // C_0..C_T
    std::vector<Rat> stakes;
    bool bankrupt = false;  // some C_t < 0
};

// Exact capital recursion C_t = C_{t-1} + stake_t * y_t.
CapitalPath run_capital(const BettingStrategy& strategy, const std::vector<Rat>& ys,
                        const Rat& initial);

// Multiplicative factors E_t = C_t / C_{t-1}, with E_t = 0 once capital hits 0;
// errors with "Bankrupt" on negative capital.
std::vector<Rat> to_multiplicative(const CapitalPath& path);

// E is a nonnegative variable with E - 1 an admissible gamble.
bool evariable_check(const GambleSpace& one_round_space, const Variable& E);

BettingStrategy kt_strategy();
BettingStrategy constant_fraction(const Rat& a);

// Multiplicative strategy replicating the one-sided sum deviation event; the
// transcendental constants carry outward-rounded rational bounds and the
// runnable strategy uses the safe (upper) ends.
struct AzumaStrategy {
    Rat eps;
    long T = 0;
    Bounds initial;   // exp(-eps^2 / 2T)
    Bounds fraction;  // (e^eps - e^-eps) / (2 e^{-2 eps^2})
    BettingStrategy strategy;
};

AzumaStrategy azuma_strategy(const Rat& eps, long T);

struct LlnGrowth {
    Rat capital;            // exact prod (1 + a y_t)
    Rat bound;              // (1 + a delta - a^2)^T
    Rat log_capital_lower;  // certified lower bound on log capital
    bool applicable = false;
    bool passes = false;
};

// Exact constant-fraction growth against the elementary exponential bound;
// the bound applies when mean(ys) >= delta and 0 < a <= delta.
LlnGrowth lln_growth_check(const Rat& a, const std::vector<Rat>& ys, const Rat& delta);

}  // namespace gtp
