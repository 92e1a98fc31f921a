#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gtp/pricing.hpp"

namespace gtp {

// A situation is the sequence of outcome indices observed so far.
using Situation = std::vector<int>;

std::string situation_string(const std::vector<std::string>& alphabet, const Situation& s);

// Product-tree sequential gamble space: the same alphabet every round, one
// gamble set per situation of length < horizon.
struct SequentialSpace {
    std::vector<std::string> alphabet;
    int horizon = 0;
    std::function<GambleSet(const Situation&)> gamble_rule;

    Eigen::Index m() const { return static_cast<Eigen::Index>(alphabet.size()); }
    long leaf_count() const;
    GambleSpace node_space(const Situation& s) const;
};

// Same gamble set at every situation.
SequentialSpace uniform_sequential_space(std::vector<std::string> alphabet, int horizon,
                                         GambleSet per_round);
// Explicit table keyed by situation; missing situations are an error at use.
SequentialSpace table_sequential_space(std::vector<std::string> alphabet, int horizon,
                                       std::map<Situation, GambleSet> table);

// Leaves in lexicographic order of their index sequences.
long leaf_index(const SequentialSpace& space, const Situation& leaf);
Variable tabulate_leaves(const SequentialSpace& space,
                         const std::function<ExtReal(const Situation&)>& f);

struct StrategyChoice {
    Vec coefficients;                // Cone/Hull coefficient vector
    Eigen::Index gamble_index = -1;  // Explicit index
};

struct Strategy {
    std::map<Situation, StrategyChoice> choices;
};

// Payoff of the chosen gamble at situation s when outcome y comes up.
ExtReal strategy_payoff(const SequentialSpace& space, const Strategy& strategy,
                        const Situation& s, int y);

using Kernel = std::map<Situation, Vec>;
using ProcessTable = std::map<Situation, ExtReal>;

// Backward induction with the per-node replication price; the strategy
// replicates X from the root value whenever every node value is finite.
std::pair<ExtReal, Strategy> gambler_value(const SequentialSpace& space, const Variable& X);

// Backward induction with the per-node consistent price; errors with
// "InconsistentNode" when some node has no consistent measure.
std::pair<ExtReal, Kernel> world_value(const SequentialSpace& space, const Variable& X);

// gambler minus world value (pessimistic difference); 0 on full-support cones.
ExtReal check_minimax(const SequentialSpace& space, const Variable& X);

ExtReal conditional_upper(const SequentialSpace& space, const Variable& X, const Situation& s);

// Conditional values at every situation; always a game-theoretic supermartingale.
ProcessTable doob_process(const SequentialSpace& space, const Variable& X);

bool is_gt_supermartingale(const SequentialSpace& space, const ProcessTable& proc);

ProcessTable strategy_capital(const SequentialSpace& space, const Strategy& strategy,
                              const Rat& initial);

// alpha + terminal strategy payoff dominates X at every leaf.
bool verify_replication(const SequentialSpace& space, const Strategy& strategy, const Rat& alpha,
                        const Variable& X);

bool is_sequentially_consistent(const SequentialSpace& space, const Kernel& kernel);

// Exact E_{P^kernel} X by forward products; X must be real wherever the
// kernel gives positive mass.
Rat kernel_expectation(const SequentialSpace& space, const Kernel& kernel, const Variable& X);

struct SeqPriceChain {
    ExtReal lower_g, lower_star, upper_star, upper_g;
};

SeqPriceChain seq_price_chain(const SequentialSpace& space, const Variable& X);

// sup over sequentially consistent kernels of P(max_t proc_t >= 1/alpha),
// by DP on (situation, hit flag) with the hit state absorbing.
std::pair<Rat, bool> ville_bound(const SequentialSpace& space, const ProcessTable& proc,
                                 const Rat& alpha);

struct CltCounterexample {
    long k = 0;
    Rat prob_at_zero;
    Vec kernel;  // i.i.d. law on the alphabet {-1, 0, k}
};

// Least k whose zero-mean unit-variance law on {-1,0,k} keeps the partial sum
// nonpositive with probability > target after n steps.
CltCounterexample clt_counterexample(long n, const Rat& target);

}  // namespace gtp
