#include "gtp/onlinelearn.hpp"

#include <memory>

#include "gtp/approx.hpp"

namespace gtp {

OnlineGame make_game(std::vector<std::string> actions, std::vector<std::string> alphabet,
                     Mat loss, int horizon) {
    if (actions.empty() || alphabet.empty()) fail("BadInput", "game needs actions and outcomes");
    if (horizon < 0) fail("BadInput", "horizon must be nonnegative");
    if (loss.rows() != static_cast<Eigen::Index>(actions.size()) ||
        loss.cols() != static_cast<Eigen::Index>(alphabet.size()))
        fail("BadInput", "loss table shape mismatch");
    return OnlineGame{std::move(actions), std::move(alphabet), std::move(loss), horizon};
}

namespace {

Rat cumulative_loss(const OnlineGame& game, Eigen::Index f, const Situation& history) {
    Rat sum(0);
    for (int y : history) sum += game.loss(f, y);
    return sum;
}

Rat best_action_loss(const OnlineGame& game, const Situation& history) {
    Rat best = cumulative_loss(game, 0, history);
    for (Eigen::Index f = 1; f < game.loss.rows(); ++f) {
        Rat l = cumulative_loss(game, f, history);
        if (l < best) best = l;
    }
    return best;
}

}  // namespace

std::pair<SequentialSpace, Variable> game_to_space(const OnlineGame& game) {
    std::vector<Vec> generators;
    for (Eigen::Index f = 0; f < game.loss.rows(); ++f)
        generators.push_back(Vec(-game.loss.row(f).transpose()));
    SequentialSpace space =
        uniform_sequential_space(game.alphabet, game.horizon, hull_set(generators));
    Variable X = tabulate_leaves(
        space, [&](const Situation& s) { return ExtReal(-best_action_loss(game, s)); });
    return {std::move(space), std::move(X)};
}

ExtReal minimax_regret(const OnlineGame& game) {
    auto [space, X] = game_to_space(game);
    return gambler_value(space, X).first;
}

Relaxation doob_relaxation(const OnlineGame& game) {
    auto [space, X] = game_to_space(game);
    auto table = std::make_shared<ProcessTable>(doob_process(space, X));
    Relaxation rel;
    rel.label = "doob";
    rel.value = [table](const Situation& s) { return table->at(s); };
    return rel;
}

namespace {

// Certified upper bound on (1/lambda) log sum_f exp(-lambda L_f) + 2 lambda R.
Rat ew_value_at(const std::vector<Rat>& cum_losses, long remaining, const Rat& lambda) {
    Rat sum_hi(0);
    for (const Rat& L : cum_losses) sum_hi += exp_bounds(Rat(-lambda * L)).hi;
    return log_bounds(sum_hi).hi / lambda + 2 * lambda * remaining;
}

}  // namespace

Relaxation exp_weights_relaxation(const OnlineGame& game) {
    const OnlineGame g = game;
    auto cache = std::make_shared<std::map<Situation, ExtReal>>();
    Relaxation rel;
    rel.label = "exp_weights";
    rel.value = [g, cache](const Situation& s) {
        if (auto it = cache->find(s); it != cache->end()) return it->second;
        std::vector<Rat> cum;
        for (Eigen::Index f = 0; f < g.loss.rows(); ++f)
            cum.push_back(cumulative_loss(g, f, s));
        const long remaining = g.horizon - static_cast<long>(s.size());

        // Golden-section on [1/1000, 10]; every evaluation is a valid upper
        // bound, so non-unimodality only costs tightness, never soundness.
        const Rat golden = make_rat(4181, 6765);
        auto snap = [](const Rat& x) { return round_up(x, 32); };
        Rat a = make_rat(1, 1000), b(10);
        Rat best = ew_value_at(cum, remaining, a);
        auto consider = [&](const Rat& lambda) {
            Rat v = ew_value_at(cum, remaining, lambda);
            if (v < best) best = v;
        };
        consider(b);
        Rat x1 = snap(b - golden * (b - a)), x2 = snap(a + golden * (b - a));
        Rat f1 = ew_value_at(cum, remaining, x1), f2 = ew_value_at(cum, remaining, x2);
        if (f1 < best) best = f1;
        if (f2 < best) best = f2;
        for (int iter = 0; iter < 96; ++iter) {
            if (f1 <= f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = snap(b - golden * (b - a));
                if (x1 <= a) x1 = snap((a + b) / 2);
                f1 = ew_value_at(cum, remaining, x1);
                if (f1 < best) best = f1;
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = snap(a + golden * (b - a));
                if (x2 >= b) x2 = snap((a + b) / 2);
                f2 = ew_value_at(cum, remaining, x2);
                if (f2 < best) best = f2;
            }
        }
        ExtReal out(best);
        (*cache)[s] = out;
        return out;
    };
    return rel;
}

namespace {

// Inner one-step value inf_q sup_y {E_q loss(.,y) + child(y)} and, on demand,
// the lex-smallest argmin q.
std::pair<ExtReal, Vec> inner_step(const OnlineGame& game, const std::vector<ExtReal>& child,
                                   bool want_q) {
    const Eigen::Index F = game.loss.rows();
    const Eigen::Index Y = game.loss.cols();
    Vec lexmin_simplex = unit_vec(F, F - 1);
    for (Eigen::Index y = 0; y < Y; ++y)
        if (child[static_cast<size_t>(y)].is_pos_inf())
            return {ExtReal::pos_inf(), std::move(lexmin_simplex)};

    LinearProgram lp;  // variables (q_1..q_F, t)
    lp.maximize = false;
    lp.c = zero_vec(F + 1);
    lp.c(F) = 1;
    for (Eigen::Index f = 0; f < F; ++f) lp.set_lower(f, Rat(0));
    Vec ones = zero_vec(F + 1);
    ones.head(F) = Vec::Constant(F, Rat(1));
    lp.add_row(std::move(ones), Rel::EQ, Rat(1));
    for (Eigen::Index y = 0; y < Y; ++y) {
        if (!child[static_cast<size_t>(y)].is_finite()) continue;  // -inf rows are vacuous
        Vec row = zero_vec(F + 1);
        row.head(F) = game.loss.col(y);
        row(F) = -1;
        lp.add_row(std::move(row), Rel::LE, -child[static_cast<size_t>(y)].finite());
    }
    LPResult r = want_q ? solve_lp_lexmin(lp) : solve_lp(lp);
    if (r.status == LPStatus::Unbounded) return {ExtReal::neg_inf(), std::move(lexmin_simplex)};
    if (r.status != LPStatus::Optimal) fail("Internal", "meta LP infeasible");
    Vec q = want_q ? Vec(r.point.head(F)) : Vec();
    return {ExtReal(r.value), std::move(q)};
}

std::vector<ExtReal> child_values(const OnlineGame& game, const Relaxation& rel,
                                  const Situation& s) {
    std::vector<ExtReal> child;
    Situation sy = s;
    for (int y = 0; y < static_cast<int>(game.alphabet.size()); ++y) {
        sy.push_back(y);
        child.push_back(rel.value(sy));
        sy.pop_back();
    }
    return child;
}

}  // namespace

AdmissibilityReport check_admissible(const OnlineGame& game, const Relaxation& rel,
                                     const Rat& tolerance) {
    if (tolerance < 0) fail("BadInput", "negative tolerance");
    AdmissibilityReport report;
    report.tolerance = tolerance;
    Situation s;
    std::function<void()> rec = [&]() {
        ExtReal here = rel.value(s);
        if (static_cast<int>(s.size()) == game.horizon) {
            ExtReal target(-best_action_loss(game, s));
            if (!(target <= here + ExtReal(tolerance)))
                report.violations.push_back(
                    {s, "terminal: " + here.to_string() + " < " + target.to_string()});
            return;
        }
        ExtReal inner = inner_step(game, child_values(game, rel, s), false).first;
        if (!(inner <= here + ExtReal(tolerance)))
            report.violations.push_back(
                {s, "one-step: " + here.to_string() + " < " + inner.to_string()});
        for (int y = 0; y < static_cast<int>(game.alphabet.size()); ++y) {
            s.push_back(y);
            rec();
            s.pop_back();
        }
    };
    rec();
    return report;
}

Vec meta_step(const OnlineGame& game, const Relaxation& rel, const Situation& history) {
    if (static_cast<int>(history.size()) >= game.horizon && game.horizon > 0)
        fail("BadInput", "history already complete");
    return inner_step(game, child_values(game, rel, history), true).second;
}

MasterReport master_bound_check(const OnlineGame& game, const Relaxation& rel, const Rat& slack) {
    if (game.horizon > 8) fail("NodeCap", "master check capped at horizon 8");
    MasterReport report;
    report.root = rel.value({});

    auto [space, X] = game_to_space(game);
    ProcessTable table;
    Situation s;
    std::function<void()> fill = [&]() {
        table[s] = rel.value(s);
        if (static_cast<int>(s.size()) == game.horizon) return;
        for (int y = 0; y < static_cast<int>(game.alphabet.size()); ++y) {
            s.push_back(y);
            fill();
            s.pop_back();
        }
    };
    fill();
    report.supermartingale = is_gt_supermartingale(space, table);

    if (!report.root.is_finite()) {
        if (report.root.is_neg_inf()) report.failing_sequences.push_back({});
        return report;
    }
    const Rat budget = report.root.finite() + slack;
    std::function<void(Rat)> play = [&](Rat expected_loss) {
        if (static_cast<int>(s.size()) == game.horizon) {
            if (expected_loss - best_action_loss(game, s) > budget)
                report.failing_sequences.push_back(s);
            return;
        }
        Vec q = meta_step(game, rel, s);
        for (int y = 0; y < static_cast<int>(game.alphabet.size()); ++y) {
            Rat step = q.dot(game.loss.col(y));
            s.push_back(y);
            play(expected_loss + step);
            s.pop_back();
        }
    };
    play(Rat(0));
    return report;
}

}  // namespace gtp
