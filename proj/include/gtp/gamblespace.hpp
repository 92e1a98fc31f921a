#pragma once

#include <string>
#include <vector>

#include "gtp/extreal.hpp"
#include "gtp/ratlp.hpp"

namespace gtp {

// A payoff function on a finite outcome set; entries may be +inf (never -inf
// inside gamble sets after construction-time pruning).
struct Variable {
    std::vector<ExtReal> values;

    Variable() = default;
    explicit Variable(std::vector<ExtReal> v) : values(std::move(v)) {}
    explicit Variable(const Vec& v) {
        values.reserve(static_cast<size_t>(v.size()));
        for (Eigen::Index i = 0; i < v.size(); ++i) values.emplace_back(v(i));
    }

    Eigen::Index size() const { return static_cast<Eigen::Index>(values.size()); }
    const ExtReal& operator()(Eigen::Index i) const { return values[static_cast<size_t>(i)]; }
    ExtReal& operator()(Eigen::Index i) { return values[static_cast<size_t>(i)]; }

    bool is_real() const {
        for (const auto& x : values)
            if (!x.is_finite()) return false;
        return true;
    }
    // Finite entries as a vector; errors when any entry is infinite.
    Vec as_vec() const;
    Variable operator-() const;
};

enum class GambleRep { Explicit, Cone, Hull };

// Gamble set in one of three representations.  Explicit lists the gambles
// themselves; Cone is all nonnegative combinations of the generators; Hull is
// their convex hull.  Cone/Hull generators are real-valued.
struct GambleSet {
    GambleRep rep = GambleRep::Explicit;
    std::vector<Variable> gambles;

    Eigen::Index count() const { return static_cast<Eigen::Index>(gambles.size()); }
    // Generator matrix (rows = gambles) for Cone/Hull or real-valued Explicit sets.
    Mat generator_matrix(Eigen::Index n_outcomes) const;
};

GambleSet explicit_set(std::vector<Variable> gambles);
GambleSet cone_set(const std::vector<Vec>& generators);
GambleSet hull_set(const std::vector<Vec>& generators);

struct GambleSpace {
    std::vector<std::string> outcome_labels;
    GambleSet gambles;

    Eigen::Index n() const { return static_cast<Eigen::Index>(outcome_labels.size()); }
};

GambleSpace make_space(std::vector<std::string> labels, GambleSet set);

// No admissible gamble has strictly positive infimum.
bool is_arbitrage_free(const GambleSpace& space);

// Arbitrage-freeness of the pairwise-sum set; Hull unsupported.
bool sum_is_arbitrage_free(const GambleSpace& space);

// Drops Explicit gambles that can never improve the price of X: those with a
// -inf entry and those whose shortfall sup is +inf.
GambleSpace prune_useless(const GambleSpace& space, const Variable& X);

// Keeps exactly the gambles with finite infimum (Explicit only).
GambleSpace restrict_bounded_below(const GambleSpace& space);

// Membership of a real-valued Z in the closed downward closure.
bool dcl_membership(const GambleSpace& space, const Variable& Z);

struct SupportCheck {
    bool full_support = false;
    bool inconclusive = false;
    std::vector<Eigen::Index> dead_outcomes;  // outcomes no consistent measure charges
};

// For each outcome, decides whether some consistent measure gives it positive
// mass.  The exact LP max p(omega) settles every instance, so the search bound
// parameter is retained for interface stability but never leaves a verdict open.
SupportCheck full_support_check(const GambleSpace& space, long denom_bound = 10000);

}  // namespace gtp
