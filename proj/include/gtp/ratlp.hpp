#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <optional>
#include <vector>

#include "gtp/error.hpp"
#include "gtp/scalar.hpp"

namespace gtp {

enum class Rel { LE, EQ, GE };
enum class LPStatus { Optimal, Unbounded, Infeasible };

template <class S>
struct ConstraintT {
    Eigen::Matrix<S, Eigen::Dynamic, 1> row;
    Rel rel = Rel::LE;
    S rhs{};
};

template <class S>
struct LinearProgramT {
    using VecS = Eigen::Matrix<S, Eigen::Dynamic, 1>;

    bool maximize = false;
    VecS c;
    std::vector<ConstraintT<S>> rows;
    // Per-variable optional bounds; empty vectors mean all variables free.
    std::vector<std::optional<S>> lower, upper;

    Eigen::Index num_vars() const { return c.size(); }

    void add_row(VecS row, Rel rel, S rhs) {
        rows.push_back(ConstraintT<S>{std::move(row), rel, std::move(rhs)});
    }
    void set_lower(Eigen::Index j, S v) {
        if (lower.empty()) lower.assign(static_cast<size_t>(num_vars()), std::nullopt);
        lower[static_cast<size_t>(j)] = std::move(v);
    }
    void set_upper(Eigen::Index j, S v) {
        if (upper.empty()) upper.assign(static_cast<size_t>(num_vars()), std::nullopt);
        upper[static_cast<size_t>(j)] = std::move(v);
    }
};

template <class S>
struct LPResultT {
    LPStatus status = LPStatus::Infeasible;
    S value{};
    Eigen::Matrix<S, Eigen::Dynamic, 1> point;
};

template <class S>
struct PolytopeT {
    std::vector<ConstraintT<S>> h_rep;
    std::optional<std::vector<Eigen::Matrix<S, Eigen::Dynamic, 1>>> v_rep;
    Eigen::Index dim() const { return h_rep.empty() ? 0 : h_rep.front().row.size(); }
};

namespace detail {

// Dense primal simplex on the standard form min c.x, Ax = b, x >= 0, with
// Bland's anti-cycling rule.  Exact arithmetic throughout.
template <class S>
class StandardSimplex {
    using MatS = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
    using VecS = Eigen::Matrix<S, Eigen::Dynamic, 1>;

public:
    StandardSimplex(MatS A, VecS b, VecS c)
        : m_(A.rows()), n_(A.cols()), A_(std::move(A)), b_(std::move(b)), c_(std::move(c)) {
        for (Eigen::Index i = 0; i < m_; ++i) {
            if (b_(i) < 0) {
                A_.row(i) = -A_.row(i);
                b_(i) = -b_(i);
            }
        }
    }

    // Returns status; on Optimal, value() and point() are set.
    LPStatus run() {
        build_phase1();
        if (!iterate(true)) fail("Internal", "phase-1 unbounded");
        if (obj_value() != 0) return LPStatus::Infeasible;
        purge_artificials();
        build_phase2();
        if (!iterate(false)) return LPStatus::Unbounded;
        return LPStatus::Optimal;
    }

    S value() const { return obj_value(); }

    VecS point() const {
        VecS x = VecS::Constant(n_, S(0));
        for (Eigen::Index i = 0; i < m_; ++i)
            if (basis_[static_cast<size_t>(i)] < n_) x(basis_[static_cast<size_t>(i)]) = T_(i, cols_ - 1);
        return x;
    }

private:
    Eigen::Index m_, n_;
    MatS A_;
    VecS b_, c_;
    MatS T_;             // m_ x cols_, last column = rhs
    VecS cost_;          // reduced costs over cols_ - 1 columns
    S neg_obj_{};        // negative of current objective
    Eigen::Index cols_ = 0;
    std::vector<Eigen::Index> basis_;

    S obj_value() const { return -neg_obj_; }

    void build_phase1() {
        cols_ = n_ + m_ + 1;
        T_ = MatS::Constant(m_, cols_, S(0));
        T_.block(0, 0, m_, n_) = A_;
        T_.col(cols_ - 1) = b_;
        basis_.resize(static_cast<size_t>(m_));
        for (Eigen::Index i = 0; i < m_; ++i) {
            T_(i, n_ + i) = 1;
            basis_[static_cast<size_t>(i)] = n_ + i;
        }
        // Phase-1 cost: sum of artificials, expressed in reduced form.
        cost_ = VecS::Constant(cols_ - 1, S(0));
        neg_obj_ = 0;
        for (Eigen::Index j = 0; j < n_; ++j) {
            S s(0);
            for (Eigen::Index i = 0; i < m_; ++i) s += T_(i, j);
            cost_(j) = -s;
        }
        S sum_b(0);
        for (Eigen::Index i = 0; i < m_; ++i) sum_b += T_(i, cols_ - 1);
        neg_obj_ = -sum_b;
    }

    void purge_artificials() {
        // Pivot basic artificials out where possible; drop redundant rows.
        for (Eigen::Index i = 0; i < m_;) {
            if (basis_[static_cast<size_t>(i)] < n_) {
                ++i;
                continue;
            }
            Eigen::Index enter = -1;
            for (Eigen::Index j = 0; j < n_; ++j) {
                if (T_(i, j) != 0) {
                    enter = j;
                    break;
                }
            }
            if (enter >= 0) {
                pivot(i, enter);
                ++i;
            } else {
                drop_row(i);
            }
        }
    }

    void drop_row(Eigen::Index r) {
        for (Eigen::Index i = r; i + 1 < m_; ++i) {
            T_.row(i) = T_.row(i + 1);
            basis_[static_cast<size_t>(i)] = basis_[static_cast<size_t>(i + 1)];
        }
        m_ -= 1;
        T_.conservativeResize(m_, cols_);
        basis_.resize(static_cast<size_t>(m_));
    }

    void build_phase2() {
        // Shrink to real columns + rhs and rebuild reduced costs from c_.
        MatS T2 = MatS::Constant(m_, n_ + 1, S(0));
        T2.block(0, 0, m_, n_) = T_.block(0, 0, m_, n_);
        T2.col(n_) = T_.col(cols_ - 1);
        T_ = std::move(T2);
        cols_ = n_ + 1;
        cost_ = VecS::Constant(n_, S(0));
        neg_obj_ = 0;
        for (Eigen::Index j = 0; j < n_; ++j) cost_(j) = c_(j);
        for (Eigen::Index i = 0; i < m_; ++i) {
            Eigen::Index bi = basis_[static_cast<size_t>(i)];
            if (c_(bi) != 0) {
                cost_ -= c_(bi) * T_.row(i).head(n_).transpose();
                neg_obj_ -= c_(bi) * T_(i, cols_ - 1);
            }
        }
    }

    // Bland's rule iteration; returns false when unbounded.
    bool iterate(bool phase1) {
        const Eigen::Index limit = phase1 ? cols_ - 1 : n_;
        for (;;) {
            Eigen::Index enter = -1;
            for (Eigen::Index j = 0; j < limit; ++j) {
                if (cost_(j) < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return true;
            Eigen::Index leave = -1;
            for (Eigen::Index i = 0; i < m_; ++i) {
                if (T_(i, enter) <= 0) continue;
                if (leave < 0) {
                    leave = i;
                    continue;
                }
                S lhs = T_(i, cols_ - 1) * T_(leave, enter);
                S rhs = T_(leave, cols_ - 1) * T_(i, enter);
                if (lhs < rhs ||
                    (lhs == rhs && basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(leave)]))
                    leave = i;
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }

    void pivot(Eigen::Index r, Eigen::Index jcol) {
        S piv = T_(r, jcol);
        T_.row(r) /= piv;
        for (Eigen::Index i = 0; i < m_; ++i) {
            if (i == r || T_(i, jcol) == 0) continue;
            S f = T_(i, jcol);
            T_.row(i) -= f * T_.row(r);
        }
        if (cost_(jcol) != 0) {
            S f = cost_(jcol);
            cost_ -= f * T_.row(r).head(cols_ - 1).transpose();
            neg_obj_ -= f * T_(r, cols_ - 1);
        }
        basis_[static_cast<size_t>(r)] = jcol;
    }
};

// Per-variable affine substitution onto nonnegative standard-form variables.
template <class S>
struct VarSubst {
    enum Kind { ShiftLo, FlipUp, Split } kind = Split;
    Eigen::Index u = -1, v = -1;
    S offset{};
};

}  // namespace detail

template <class S>
LPResultT<S> solve_lp(const LinearProgramT<S>& lp) {
    using MatS = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
    using VecS = Eigen::Matrix<S, Eigen::Dynamic, 1>;

    const Eigen::Index n = lp.num_vars();
    for (const auto& r : lp.rows)
        if (r.row.size() != n) fail("BadInput", "constraint row length mismatch");

    auto lo = [&](Eigen::Index j) -> const std::optional<S>& {
        static const std::optional<S> none;
        return lp.lower.empty() ? none : lp.lower[static_cast<size_t>(j)];
    };
    auto up = [&](Eigen::Index j) -> const std::optional<S>& {
        static const std::optional<S> none;
        return lp.upper.empty() ? none : lp.upper[static_cast<size_t>(j)];
    };

    std::vector<detail::VarSubst<S>> subst(static_cast<size_t>(n));
    Eigen::Index nn = 0;
    std::vector<ConstraintT<S>> extra;  // range rows u <= up - lo
    for (Eigen::Index j = 0; j < n; ++j) {
        auto& sb = subst[static_cast<size_t>(j)];
        if (lo(j)) {
            sb.kind = detail::VarSubst<S>::ShiftLo;
            sb.offset = *lo(j);
            sb.u = nn++;
            if (up(j)) {
                if (*up(j) < *lo(j)) return {LPStatus::Infeasible, S(0), VecS()};
                // Range row in x-space; the substitution pass below rewrites it.
                ConstraintT<S> c;
                c.row = VecS::Constant(n, S(0));
                c.row(j) = 1;
                c.rel = Rel::LE;
                c.rhs = *up(j);
                extra.push_back(std::move(c));
            }
        } else if (up(j)) {
            sb.kind = detail::VarSubst<S>::FlipUp;
            sb.offset = *up(j);
            sb.u = nn++;
        } else {
            sb.kind = detail::VarSubst<S>::Split;
            sb.u = nn++;
            sb.v = nn++;
        }
    }

    std::vector<ConstraintT<S>> all_rows = lp.rows;
    for (auto& c : extra) all_rows.push_back(std::move(c));

    // x_j = offset + u (ShiftLo), offset - u (FlipUp), u - v (Split)
    const Eigen::Index m = static_cast<Eigen::Index>(all_rows.size());
    MatS A = MatS::Constant(m, nn, S(0));
    VecS b = VecS::Constant(m, S(0));
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto& cons = all_rows[static_cast<size_t>(i)];
        S shift(0);
        VecS arow = VecS::Constant(nn, S(0));
        for (Eigen::Index j = 0; j < n; ++j) {
            const S& a = cons.row(j);
            if (a == 0) continue;
            const auto& sb = subst[static_cast<size_t>(j)];
            switch (sb.kind) {
                case detail::VarSubst<S>::ShiftLo:
                    arow(sb.u) += a;
                    shift += a * sb.offset;
                    break;
                case detail::VarSubst<S>::FlipUp:
                    arow(sb.u) -= a;
                    shift += a * sb.offset;
                    break;
                case detail::VarSubst<S>::Split:
                    arow(sb.u) += a;
                    arow(sb.v) -= a;
                    break;
            }
        }
        S rhs = cons.rhs - shift;
        Rel rel = cons.rel;
        if (rel == Rel::GE) {
            arow = -arow;
            rhs = -rhs;
            rel = Rel::LE;
        }
        all_rows[static_cast<size_t>(i)].rel = rel;
        A.row(i) = arow.transpose();
        b(i) = rhs;
    }

    // Append slack columns for LE rows (GE already flipped above).
    Eigen::Index n_slack = 0;
    for (const auto& cons : all_rows)
        if (cons.rel != Rel::EQ) ++n_slack;
    MatS A2 = MatS::Constant(m, nn + n_slack, S(0));
    A2.block(0, 0, m, nn) = A;
    Eigen::Index sidx = nn;
    for (Eigen::Index i = 0; i < m; ++i)
        if (all_rows[static_cast<size_t>(i)].rel != Rel::EQ) A2(i, sidx++) = 1;

    VecS cc = VecS::Constant(nn + n_slack, S(0));
    S cshift(0);
    for (Eigen::Index j = 0; j < n; ++j) {
        S a = lp.c(j);
        if (lp.maximize) a = -a;
        if (a == 0) continue;
        const auto& sb = subst[static_cast<size_t>(j)];
        switch (sb.kind) {
            case detail::VarSubst<S>::ShiftLo:
                cc(sb.u) += a;
                cshift += a * sb.offset;
                break;
            case detail::VarSubst<S>::FlipUp:
                cc(sb.u) -= a;
                cshift += a * sb.offset;
                break;
            case detail::VarSubst<S>::Split:
                cc(sb.u) += a;
                cc(sb.v) -= a;
                break;
        }
    }

    detail::StandardSimplex<S> sx(std::move(A2), std::move(b), std::move(cc));
    LPStatus st = sx.run();
    LPResultT<S> out;
    out.status = st;
    if (st != LPStatus::Optimal) return out;

    VecS u = sx.point();
    VecS x = VecS::Constant(n, S(0));
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto& sb = subst[static_cast<size_t>(j)];
        switch (sb.kind) {
            case detail::VarSubst<S>::ShiftLo: x(j) = sb.offset + u(sb.u); break;
            case detail::VarSubst<S>::FlipUp: x(j) = sb.offset - u(sb.u); break;
            case detail::VarSubst<S>::Split: x(j) = u(sb.u) - u(sb.v); break;
        }
    }
    S val = sx.value() + cshift;
    if (lp.maximize) val = -val;
    out.value = std::move(val);
    out.point = std::move(x);
    return out;
}

// Optimal solution with the lexicographically smallest point on the optimal
// face; coordinates are fixed one at a time.  Errors with "UnboundedFace" when
// a coordinate has no minimum on the face.
template <class S>
LPResultT<S> solve_lp_lexmin(const LinearProgramT<S>& lp) {
    using VecS = Eigen::Matrix<S, Eigen::Dynamic, 1>;
    LPResultT<S> first = solve_lp(lp);
    if (first.status != LPStatus::Optimal) return first;

    LinearProgramT<S> work = lp;
    work.add_row(lp.c, Rel::EQ, first.value);
    const Eigen::Index n = lp.num_vars();
    VecS fixed = VecS::Constant(n, S(0));
    for (Eigen::Index j = 0; j < n; ++j) {
        work.maximize = false;
        work.c = VecS::Constant(n, S(0));
        work.c(j) = 1;
        LPResultT<S> rj = solve_lp(work);
        if (rj.status == LPStatus::Unbounded) fail("UnboundedFace", "lexmin coordinate unbounded");
        if (rj.status != LPStatus::Optimal) fail("Internal", "lexmin lost feasibility");
        fixed(j) = rj.value;
        VecS ej = VecS::Constant(n, S(0));
        ej(j) = 1;
        work.add_row(std::move(ej), Rel::EQ, rj.value);
    }
    first.point = std::move(fixed);
    return first;
}

// Rewrites variable bounds as explicit rows; all variables become free.
template <class S>
LinearProgramT<S> fold_bounds(const LinearProgramT<S>& lp) {
    using VecS = Eigen::Matrix<S, Eigen::Dynamic, 1>;
    LinearProgramT<S> out = lp;
    out.lower.clear();
    out.upper.clear();
    const Eigen::Index n = lp.num_vars();
    for (Eigen::Index j = 0; j < n; ++j) {
        if (!lp.lower.empty() && lp.lower[static_cast<size_t>(j)]) {
            VecS e = VecS::Constant(n, S(0));
            e(j) = 1;
            out.add_row(std::move(e), Rel::GE, *lp.lower[static_cast<size_t>(j)]);
        }
        if (!lp.upper.empty() && lp.upper[static_cast<size_t>(j)]) {
            VecS e = VecS::Constant(n, S(0));
            e(j) = 1;
            out.add_row(std::move(e), Rel::LE, *lp.upper[static_cast<size_t>(j)]);
        }
    }
    return out;
}

// Dual of a bound-free LP.  For a minimization primal min c.x st rows, the dual
// is max b.y st A'y = c with y <= 0 on LE rows, y >= 0 on GE rows, free on EQ.
template <class S>
LinearProgramT<S> dual_program(const LinearProgramT<S>& lp_in) {
    using VecS = Eigen::Matrix<S, Eigen::Dynamic, 1>;
    if (!lp_in.lower.empty() || !lp_in.upper.empty())
        fail("BadInput", "dual_program requires folded bounds");
    LinearProgramT<S> lp = lp_in;
    if (lp.maximize) {
        lp.maximize = false;
        lp.c = -lp.c;
    }
    const Eigen::Index n = lp.num_vars();
    const Eigen::Index m = static_cast<Eigen::Index>(lp.rows.size());
    LinearProgramT<S> dual;
    dual.maximize = true;
    dual.c = VecS::Constant(m, S(0));
    for (Eigen::Index i = 0; i < m; ++i) dual.c(i) = lp.rows[static_cast<size_t>(i)].rhs;
    dual.lower.assign(static_cast<size_t>(m), std::nullopt);
    dual.upper.assign(static_cast<size_t>(m), std::nullopt);
    for (Eigen::Index i = 0; i < m; ++i) {
        switch (lp.rows[static_cast<size_t>(i)].rel) {
            case Rel::LE: dual.upper[static_cast<size_t>(i)] = S(0); break;
            case Rel::GE: dual.lower[static_cast<size_t>(i)] = S(0); break;
            case Rel::EQ: break;
        }
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        VecS col = VecS::Constant(m, S(0));
        for (Eigen::Index i = 0; i < m; ++i) col(i) = lp.rows[static_cast<size_t>(i)].row(j);
        dual.add_row(std::move(col), Rel::EQ, lp.c(j));
    }
    return dual;
}

// Exact strong-duality audit for Optimal primal results.
template <class S>
bool duality_audit(const LinearProgramT<S>& lp) {
    LPResultT<S> primal = solve_lp(lp);
    if (primal.status != LPStatus::Optimal) return true;
    LinearProgramT<S> folded = fold_bounds(lp);
    bool flip = folded.maximize;
    LPResultT<S> d = solve_lp(dual_program(folded));
    if (d.status != LPStatus::Optimal) return false;
    S dv = flip ? S(-d.value) : d.value;
    return dv == primal.value;
}

namespace detail {

// Unique solution of a d x d rational system; nullopt when singular.
template <class S>
std::optional<Eigen::Matrix<S, Eigen::Dynamic, 1>> solve_unique(
    Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> A, Eigen::Matrix<S, Eigen::Dynamic, 1> b) {
    const Eigen::Index d = A.rows();
    for (Eigen::Index col = 0; col < d; ++col) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = col; i < d; ++i) {
            if (A(i, col) != 0) {
                piv = i;
                break;
            }
        }
        if (piv < 0) return std::nullopt;
        if (piv != col) {
            A.row(piv).swap(A.row(col));
            std::swap(b(piv), b(col));
        }
        for (Eigen::Index i = col + 1; i < d; ++i) {
            if (A(i, col) == 0) continue;
            S f = A(i, col) / A(col, col);
            A.row(i) -= f * A.row(col);
            b(i) -= f * b(col);
        }
    }
    Eigen::Matrix<S, Eigen::Dynamic, 1> x(d);
    for (Eigen::Index i = d - 1; i >= 0; --i) {
        S s = b(i);
        for (Eigen::Index j = i + 1; j < d; ++j) s -= A(i, j) * x(j);
        x(i) = s / A(i, i);
    }
    return x;
}

template <class S>
bool satisfies(const ConstraintT<S>& c, const Eigen::Matrix<S, Eigen::Dynamic, 1>& x) {
    S lhs = c.row.dot(x);
    switch (c.rel) {
        case Rel::LE: return lhs <= c.rhs;
        case Rel::GE: return lhs >= c.rhs;
        case Rel::EQ: return lhs == c.rhs;
    }
    return false;
}

}  // namespace detail

// All vertices of a (by default bounded) H-polytope, deduplicated, in
// lexicographic order.  Brute-force basis inspection: every d-subset of
// constraints is solved as equalities and feasibility-checked.
template <class S>
std::vector<Eigen::Matrix<S, Eigen::Dynamic, 1>> enumerate_vertices(const PolytopeT<S>& p,
                                                                    Eigen::Index dim_cap = 8,
                                                                    bool require_bounded = true) {
    using VecS = Eigen::Matrix<S, Eigen::Dynamic, 1>;
    using MatS = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
    const Eigen::Index d = p.dim();
    if (d > dim_cap) fail("DimensionCap", "polytope dimension exceeds cap");
    const Eigen::Index m = static_cast<Eigen::Index>(p.h_rep.size());
    if (d == 0 || m < d) return {};

    if (require_bounded) {
        LinearProgramT<S> probe;
        probe.c = VecS::Constant(d, S(0));
        probe.rows = p.h_rep;
        for (Eigen::Index j = 0; j < d; ++j) {
            probe.c = VecS::Constant(d, S(0));
            probe.c(j) = 1;
            for (bool mx : {false, true}) {
                probe.maximize = mx;
                LPResultT<S> r = solve_lp(probe);
                if (r.status == LPStatus::Unbounded) fail("Unbounded", "polytope is unbounded");
                if (r.status == LPStatus::Infeasible) return {};
            }
        }
    }

    std::vector<VecS> found;
    std::vector<Eigen::Index> idx(static_cast<size_t>(d));
    for (Eigen::Index i = 0; i < d; ++i) idx[static_cast<size_t>(i)] = i;
    for (;;) {
        MatS A(d, d);
        VecS b(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            const auto& c = p.h_rep[static_cast<size_t>(idx[static_cast<size_t>(i)])];
            A.row(i) = c.row.transpose();
            b(i) = c.rhs;
        }
        if (auto x = detail::solve_unique<S>(std::move(A), std::move(b))) {
            bool ok = true;
            for (const auto& c : p.h_rep) {
                if (!detail::satisfies(c, *x)) {
                    ok = false;
                    break;
                }
            }
            if (ok) found.push_back(std::move(*x));
        }
        // next combination
        Eigen::Index k = d - 1;
        while (k >= 0 && idx[static_cast<size_t>(k)] == m - d + k) --k;
        if (k < 0) break;
        ++idx[static_cast<size_t>(k)];
        for (Eigen::Index i = k + 1; i < d; ++i)
            idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
    }

    std::sort(found.begin(), found.end(), [](const VecS& a, const VecS& b) {
        for (Eigen::Index i = 0; i < a.size(); ++i)
            if (a(i) != b(i)) return a(i) < b(i);
        return false;
    });
    found.erase(std::unique(found.begin(), found.end(),
                            [](const VecS& a, const VecS& b) { return a == b; }),
                found.end());
    return found;
}

using Constraint = ConstraintT<Rat>;
using LinearProgram = LinearProgramT<Rat>;
using LPResult = LPResultT<Rat>;
using Polytope = PolytopeT<Rat>;

}  // namespace gtp
