#include "gtp/sequential.hpp"

#include <cstdlib>

namespace gtp {

namespace {

long node_cap() {
    if (const char* env = std::getenv("GW_NODE_CAP")) {
        long cap = std::atol(env);
        if (cap > 0) return cap;
    }
    return 1000000;
}

void check_cap(const SequentialSpace& space) {
    const long cap = node_cap();
    long nodes = 0, level = 1;
    for (int t = 0; t <= space.horizon; ++t) {
        nodes += level;
        if (nodes > cap) fail("NodeCap", "tree exceeds the node cap");
        level *= static_cast<long>(space.m());
    }
}

}  // namespace

std::string situation_string(const std::vector<std::string>& alphabet, const Situation& s) {
    if (s.empty()) return "@";
    std::string out;
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ".";
        out += alphabet[static_cast<size_t>(s[i])];
    }
    return out;
}

long SequentialSpace::leaf_count() const {
    long c = 1;
    for (int t = 0; t < horizon; ++t) c *= static_cast<long>(m());
    return c;
}

GambleSpace SequentialSpace::node_space(const Situation& s) const {
    return make_space(alphabet, gamble_rule(s));
}

SequentialSpace uniform_sequential_space(std::vector<std::string> alphabet, int horizon,
                                         GambleSet per_round) {
    // Horizon 0 is a degenerate but valid tree (root = leaf).
    if (horizon < 0) fail("BadInput", "horizon must be nonnegative");
    if (alphabet.empty()) fail("BadInput", "alphabet must be nonempty");
    SequentialSpace space;
    space.alphabet = std::move(alphabet);
    space.horizon = horizon;
    space.gamble_rule = [set = std::move(per_round)](const Situation&) { return set; };
    check_cap(space);
    return space;
}

SequentialSpace table_sequential_space(std::vector<std::string> alphabet, int horizon,
                                       std::map<Situation, GambleSet> table) {
    if (horizon < 1) fail("BadInput", "horizon must be positive");
    if (alphabet.empty()) fail("BadInput", "alphabet must be nonempty");
    SequentialSpace space;
    space.alphabet = std::move(alphabet);
    space.horizon = horizon;
    space.gamble_rule = [table = std::move(table),
                         alpha = space.alphabet](const Situation& s) {
        auto it = table.find(s);
        if (it == table.end())
            fail("BadInput", "no gamble set at situation " + situation_string(alpha, s));
        return it->second;
    };
    check_cap(space);
    return space;
}

long leaf_index(const SequentialSpace& space, const Situation& leaf) {
    if (static_cast<int>(leaf.size()) != space.horizon) fail("BadInput", "not a leaf situation");
    long idx = 0;
    for (int y : leaf) {
        if (y < 0 || y >= space.m()) fail("BadInput", "outcome index out of range");
        idx = idx * static_cast<long>(space.m()) + y;
    }
    return idx;
}

Variable tabulate_leaves(const SequentialSpace& space,
                         const std::function<ExtReal(const Situation&)>& f) {
    check_cap(space);
    std::vector<ExtReal> values;
    values.reserve(static_cast<size_t>(space.leaf_count()));
    Situation s;
    std::function<void()> rec = [&]() {
        if (static_cast<int>(s.size()) == space.horizon) {
            values.push_back(f(s));
            return;
        }
        for (int y = 0; y < space.m(); ++y) {
            s.push_back(y);
            rec();
            s.pop_back();
        }
    };
    rec();
    return Variable(std::move(values));
}

ExtReal strategy_payoff(const SequentialSpace& space, const Strategy& strategy,
                        const Situation& s, int y) {
    auto it = strategy.choices.find(s);
    if (it == strategy.choices.end())
        fail("BadInput", "strategy undefined at " + situation_string(space.alphabet, s));
    const StrategyChoice& choice = it->second;
    const GambleSet set = space.gamble_rule(s);
    if (choice.gamble_index >= 0) {
        if (choice.gamble_index >= set.count()) fail("BadInput", "gamble index out of range");
        return set.gambles[static_cast<size_t>(choice.gamble_index)](y);
    }
    if (choice.coefficients.size() != set.count())
        fail("BadInput", "coefficient count mismatch");
    Rat z(0);
    for (Eigen::Index j = 0; j < set.count(); ++j)
        z += choice.coefficients(j) * set.gambles[static_cast<size_t>(j)](y).finite();
    return ExtReal(z);
}

namespace {

void check_leaf_var(const SequentialSpace& space, const Variable& X) {
    if (X.size() != space.leaf_count()) fail("BadInput", "leaf variable length mismatch");
}

// Shared backward-induction driver: combine(situation, child values) -> node value.
ProcessTable backward_table(
    const SequentialSpace& space, const Variable& X,
    const std::function<ExtReal(const Situation&, const Variable&)>& combine) {
    check_cap(space);
    check_leaf_var(space, X);
    ProcessTable table;
    Situation s;
    std::function<ExtReal()> rec = [&]() -> ExtReal {
        if (static_cast<int>(s.size()) == space.horizon) {
            ExtReal v = X(leaf_index(space, s));
            table[s] = v;
            return v;
        }
        std::vector<ExtReal> child;
        child.reserve(static_cast<size_t>(space.m()));
        for (int y = 0; y < space.m(); ++y) {
            s.push_back(y);
            child.push_back(rec());
            s.pop_back();
        }
        ExtReal v = combine(s, Variable(std::move(child)));
        table[s] = v;
        return v;
    };
    rec();
    return table;
}

}  // namespace

std::pair<ExtReal, Strategy> gambler_value(const SequentialSpace& space, const Variable& X) {
    Strategy strategy;
    ProcessTable table = backward_table(space, X, [&](const Situation& s, const Variable& child) {
        GambleSpace node = space.node_space(s);
        ExtReal v = upper_expectation(node, child);
        StrategyChoice choice;
        if (v.is_finite()) {
            ReplicationCertificate cert = replication_certificate(node, child);
            choice.coefficients = cert.coefficients;
            choice.gamble_index = cert.gamble_index;
        } else {
            // No finite certificate; record the null position.
            choice.coefficients = zero_vec(node.gambles.count());
        }
        strategy.choices[s] = std::move(choice);
        return v;
    });
    return {table.at({}), std::move(strategy)};
}

namespace {

Vec feasible_consistent_point(const GambleSpace& node) {
    LinearProgram lp;
    lp.maximize = false;
    lp.c = zero_vec(node.n());
    lp.rows = consistent_polytope(node).h_rep;
    LPResult r = solve_lp_lexmin(lp);
    if (r.status != LPStatus::Optimal) fail("Internal", "feasible point extraction failed");
    return r.point;
}

}  // namespace

std::pair<ExtReal, Kernel> world_value(const SequentialSpace& space, const Variable& X) {
    Kernel kernel;
    ProcessTable table = backward_table(space, X, [&](const Situation& s, const Variable& child) {
        GambleSpace node = space.node_space(s);
        if (!delta0_nonempty(node))
            fail("InconsistentNode", situation_string(space.alphabet, s));
        auto [v, witness] = consistent_upper_witness(node, child);
        kernel[s] = witness ? *witness : feasible_consistent_point(node);
        return v;
    });
    return {table.at({}), std::move(kernel)};
}

ExtReal check_minimax(const SequentialSpace& space, const Variable& X) {
    return sub_pessimistic(gambler_value(space, X).first, world_value(space, X).first);
}

ProcessTable doob_process(const SequentialSpace& space, const Variable& X) {
    return backward_table(space, X, [&](const Situation& s, const Variable& child) {
        return upper_expectation(space.node_space(s), child);
    });
}

ExtReal conditional_upper(const SequentialSpace& space, const Variable& X, const Situation& s) {
    if (static_cast<int>(s.size()) > space.horizon) fail("BadInput", "situation too long");
    return doob_process(space, X).at(s);
}

bool is_gt_supermartingale(const SequentialSpace& space, const ProcessTable& proc) {
    check_cap(space);
    Situation s;
    bool ok = true;
    std::function<void()> rec = [&]() {
        if (!ok || static_cast<int>(s.size()) == space.horizon) return;
        std::vector<ExtReal> child;
        for (int y = 0; y < space.m(); ++y) {
            s.push_back(y);
            auto it = proc.find(s);
            if (it == proc.end()) fail("BadInput", "process table misses a situation");
            child.push_back(it->second);
            rec();
            s.pop_back();
        }
        auto here = proc.find(s);
        if (here == proc.end()) fail("BadInput", "process table misses a situation");
        if (!(upper_expectation(space.node_space(s), Variable(std::move(child))) <= here->second))
            ok = false;
    };
    rec();
    return ok;
}

ProcessTable strategy_capital(const SequentialSpace& space, const Strategy& strategy,
                              const Rat& initial) {
    check_cap(space);
    ProcessTable table;
    Situation s;
    std::function<void(const ExtReal&)> rec = [&](const ExtReal& capital) {
        table[s] = capital;
        if (static_cast<int>(s.size()) == space.horizon) return;
        for (int y = 0; y < space.m(); ++y) {
            ExtReal next = capital + strategy_payoff(space, strategy, s, y);
            s.push_back(y);
            rec(next);
            s.pop_back();
        }
    };
    rec(ExtReal(initial));
    return table;
}

bool verify_replication(const SequentialSpace& space, const Strategy& strategy, const Rat& alpha,
                        const Variable& X) {
    check_leaf_var(space, X);
    ProcessTable capital = strategy_capital(space, strategy, alpha);
    for (const auto& [s, c] : capital) {
        if (static_cast<int>(s.size()) != space.horizon) continue;
        if (!(X(leaf_index(space, s)) <= c)) return false;
    }
    return true;
}

bool is_sequentially_consistent(const SequentialSpace& space, const Kernel& kernel) {
    check_cap(space);
    Situation s;
    bool ok = true;
    std::function<void()> rec = [&]() {
        if (!ok || static_cast<int>(s.size()) == space.horizon) return;
        auto it = kernel.find(s);
        if (it == kernel.end()) fail("BadInput", "kernel misses a situation");
        const Vec& p = it->second;
        if (p.size() != space.m()) fail("BadInput", "kernel vector length mismatch");
        for (const auto& c : consistent_polytope(space.node_space(s)).h_rep) {
            Rat lhs = c.row.dot(p);
            bool sat = c.rel == Rel::LE ? lhs <= c.rhs
                       : c.rel == Rel::GE ? lhs >= c.rhs
                                          : lhs == c.rhs;
            if (!sat) {
                ok = false;
                return;
            }
        }
        for (int y = 0; y < space.m(); ++y) {
            s.push_back(y);
            rec();
            s.pop_back();
        }
    };
    rec();
    return ok;
}

Rat kernel_expectation(const SequentialSpace& space, const Kernel& kernel, const Variable& X) {
    check_cap(space);
    check_leaf_var(space, X);
    Rat total(0);
    Situation s;
    std::function<void(const Rat&)> rec = [&](const Rat& weight) {
        if (weight == 0) return;
        if (static_cast<int>(s.size()) == space.horizon) {
            const ExtReal& x = X(leaf_index(space, s));
            if (!x.is_finite()) fail("BadInput", "kernel charges an infinite leaf");
            total += weight * x.finite();
            return;
        }
        auto it = kernel.find(s);
        if (it == kernel.end()) fail("BadInput", "kernel misses a situation");
        for (int y = 0; y < space.m(); ++y) {
            s.push_back(y);
            rec(weight * it->second(y));
            s.pop_back();
        }
    };
    rec(Rat(1));
    return total;
}

SeqPriceChain seq_price_chain(const SequentialSpace& space, const Variable& X) {
    SeqPriceChain chain{
        -gambler_value(space, -X).first,
        -world_value(space, -X).first,
        world_value(space, X).first,
        gambler_value(space, X).first,
    };
    auto check = [](const ExtReal& a, const ExtReal& b, const char* what) {
        if (!(a <= b))
            fail("TheoremViolation",
                 std::string(what) + ": " + a.to_string() + " > " + b.to_string());
    };
    check(chain.lower_g, chain.lower_star, "lower_g <= lower_star");
    check(chain.lower_star, chain.upper_star, "lower_star <= upper_star");
    check(chain.upper_star, chain.upper_g, "upper_star <= upper_g");
    return chain;
}

std::pair<Rat, bool> ville_bound(const SequentialSpace& space, const ProcessTable& proc,
                                 const Rat& alpha) {
    if (!(alpha > 0 && alpha <= 1)) fail("BadInput", "alpha must lie in (0,1]");
    for (const auto& [s, v] : proc)
        if (!(ExtReal(0) <= v)) fail("BadInput", "process is not nonnegative");
    auto root = proc.find({});
    if (root == proc.end() || root->second != ExtReal(1))
        fail("BadInput", "process root must equal 1");
    if (!is_gt_supermartingale(space, proc))
        fail("BadInput", "process is not a game-theoretic supermartingale");

    const Rat threshold = 1 / alpha;
    Situation s;
    std::function<Rat()> rec = [&]() -> Rat {
        const ExtReal& here = proc.at(s);
        if (here.is_pos_inf() || here.finite() >= threshold) return Rat(1);
        if (static_cast<int>(s.size()) == space.horizon) return Rat(0);
        Vec child(space.m());
        for (int y = 0; y < space.m(); ++y) {
            s.push_back(y);
            child(y) = rec();
            s.pop_back();
        }
        LinearProgram lp;
        lp.maximize = true;
        lp.c = child;
        lp.rows = consistent_polytope(space.node_space(s)).h_rep;
        LPResult r = solve_lp(lp);
        if (r.status != LPStatus::Optimal)
            fail("InconsistentNode", situation_string(space.alphabet, s));
        return r.value;
    };
    Rat sup_prob = rec();
    return {sup_prob, sup_prob <= alpha};
}

CltCounterexample clt_counterexample(long n, const Rat& target) {
    if (n < 1) fail("BadInput", "n must be positive");
    if (!(target > 0 && target < 1)) fail("BadInput", "target must lie in (0,1)");

    long k = 1;
    auto stay_prob = [&](long kk) -> Rat { return Rat(1) - make_rat(1, kk * (kk + 1)); };
    auto power = [&](Rat base, long e) {
        Rat out(1);
        for (long i = 0; i < e; ++i) out *= base;
        return out;
    };
    while (!(power(stay_prob(k), n) > target)) ++k;

    CltCounterexample out;
    out.k = k;
    out.kernel = zero_vec(3);
    out.kernel(0) = make_rat(1, k + 1);
    out.kernel(2) = make_rat(1, k * (k + 1));
    out.kernel(1) = Rat(1) - out.kernel(0) - out.kernel(2);

    // Exact moment checks: zero mean, unit second moment on {-1, 0, k}.
    Rat mean = -out.kernel(0) + Rat(k) * out.kernel(2);
    Rat second = out.kernel(0) + Rat(k * k) * out.kernel(2);
    if (mean != 0 || second != 1) fail("TheoremViolation", "law moments are off");

    // Consistency for the cone {y, -y, y^2-1, 1-y^2} at a single node; the
    // space repeats the same cone, so one membership check covers the tree.
    Vec y = zero_vec(3), y2 = zero_vec(3);
    y(0) = -1;
    y(2) = k;
    y2(0) = 0;
    y2(1) = -1;
    y2(2) = Rat(k) * Rat(k) - 1;
    GambleSpace node = make_space({"-1", "0", std::to_string(k)},
                                  cone_set({y, Vec(-y), y2, Vec(-y2)}));
    for (const auto& c : consistent_polytope(node).h_rep) {
        Rat lhs = c.row.dot(out.kernel);
        bool sat = c.rel == Rel::LE ? lhs <= c.rhs
                   : c.rel == Rel::GE ? lhs >= c.rhs
                                      : lhs == c.rhs;
        if (!sat) fail("TheoremViolation", "law is not consistent for the moment cone");
    }

    // Exact law of the partial sum by convolution.
    std::map<long, Rat> dist{{0, Rat(1)}};
    for (long t = 0; t < n; ++t) {
        std::map<long, Rat> next;
        for (const auto& [sum, mass] : dist) {
            next[sum - 1] += mass * out.kernel(0);
            next[sum] += mass * out.kernel(1);
            next[sum + k] += mass * out.kernel(2);
        }
        dist = std::move(next);
    }
    Rat at_zero(0);
    for (const auto& [sum, mass] : dist)
        if (sum <= 0) at_zero += mass;
    out.prob_at_zero = at_zero;
    return out;
}

}  // namespace gtp
