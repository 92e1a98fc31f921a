#pragma once

#include "gtp/sequential.hpp"

namespace gtp {

struct OnlineGame {
    std::vector<std::string> actions;
    std::vector<std::string> alphabet;
    Mat loss;  // actions x alphabet, exact rationals
    int horizon = 0;
};

OnlineGame make_game(std::vector<std::string> actions, std::vector<std::string> alphabet,
                     Mat loss, int horizon);

// Sequential space whose hull generators are y -> -loss(f,y), with benchmark
// leaf variable X(y_{1..T}) = -min_f sum_t loss(f, y_t).
std::pair<SequentialSpace, Variable> game_to_space(const OnlineGame& game);

// Distributional minimax regret = replication price of the benchmark.
ExtReal minimax_regret(const OnlineGame& game);

struct Relaxation {
    std::string label;
    std::function<ExtReal(const Situation&)> value;
};

// Conditional upper expectations of the benchmark; the tightest relaxation.
Relaxation doob_relaxation(const OnlineGame& game);

// Certified upper bound on inf_{lambda>0} {(1/lambda) log sum_f exp(-lambda L_f)
// + 2 lambda (T-t)} by golden-section search with outward-rounded bounds.
Relaxation exp_weights_relaxation(const OnlineGame& game);

struct AdmissibilityViolation {
    Situation situation;
    std::string detail;
};

struct AdmissibilityReport {
    Rat tolerance;
    std::vector<AdmissibilityViolation> violations;
    bool admissible() const { return violations.empty(); }
};

// One-step and terminal admissibility inequalities at every situation, each
// within the given tolerance.
AdmissibilityReport check_admissible(const OnlineGame& game, const Relaxation& rel,
                                     const Rat& tolerance);

// argmin_q sup_y {E_q loss(.,y) + rel(child y)} with deterministic tie-break.
Vec meta_step(const OnlineGame& game, const Relaxation& rel, const Situation& history);

struct MasterReport {
    ExtReal root;
    bool supermartingale = false;
    std::vector<Situation> failing_sequences;
    bool passes() const { return supermartingale && failing_sequences.empty(); }
};

// Plays the meta algorithm against every outcome sequence (horizon capped at
// 8) and checks expected regret <= root relaxation value plus slack; also
// checks the relaxation table is a game-theoretic supermartingale.
MasterReport master_bound_check(const OnlineGame& game, const Relaxation& rel,
                                const Rat& slack = make_rat(1, 1L << 32));

}  // namespace gtp
