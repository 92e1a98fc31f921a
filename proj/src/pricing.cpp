#include "gtp/pricing.hpp"

#include <random>

namespace gtp {

namespace {

ExtReal explicit_shortfall(const Variable& X, const Variable& Z) {
    std::vector<ExtReal> diffs;
    diffs.reserve(static_cast<size_t>(X.size()));
    for (Eigen::Index w = 0; w < X.size(); ++w) diffs.push_back(sub_pessimistic(X(w), Z(w)));
    return sup_finite_list(diffs);
}

// LP over (coefficients, t): minimize t st sum_j a_j g_j + t >= X on the
// finite rows of X; -inf rows drop out, +inf rows force +inf upstream.
LinearProgram combination_price_lp(const GambleSpace& space, const Variable& X) {
    const Eigen::Index n = space.n();
    const Eigen::Index k = space.gambles.count();
    Mat G = k > 0 ? space.gambles.generator_matrix(n) : Mat(0, n);
    LinearProgram lp;
    lp.maximize = false;
    lp.c = zero_vec(k + 1);
    lp.c(k) = 1;
    for (Eigen::Index j = 0; j < k; ++j) lp.set_lower(j, Rat(0));
    for (Eigen::Index w = 0; w < n; ++w) {
        if (!X(w).is_finite()) continue;
        Vec row = zero_vec(k + 1);
        for (Eigen::Index j = 0; j < k; ++j) row(j) = G(j, w);
        row(k) = 1;
        lp.add_row(std::move(row), Rel::GE, X(w).finite());
    }
    if (space.gambles.rep == GambleRep::Hull) {
        Vec ones = zero_vec(k + 1);
        for (Eigen::Index j = 0; j < k; ++j) ones(j) = 1;
        lp.add_row(std::move(ones), Rel::EQ, Rat(1));
    }
    return lp;
}

}  // namespace

ExtReal upper_expectation(const GambleSpace& space, const Variable& X) {
    if (X.size() != space.n()) fail("BadInput", "variable length mismatch");
    if (space.gambles.rep == GambleRep::Explicit) {
        if (space.gambles.gambles.empty()) return ExtReal::pos_inf();
        std::vector<ExtReal> prices;
        for (const auto& Z : space.gambles.gambles) prices.push_back(explicit_shortfall(X, Z));
        return inf_finite_list(prices);
    }
    for (Eigen::Index w = 0; w < X.size(); ++w)
        if (X(w).is_pos_inf()) return ExtReal::pos_inf();
    LPResult r = solve_lp(combination_price_lp(space, X));
    switch (r.status) {
        case LPStatus::Optimal: return ExtReal(r.value);
        case LPStatus::Unbounded: return ExtReal::neg_inf();
        case LPStatus::Infeasible: fail("Internal", "price LP infeasible");
    }
    fail("Internal", "unreachable");
}

ExtReal lower_expectation(const GambleSpace& space, const Variable& X) {
    return -upper_expectation(space, -X);
}

namespace {

Variable indicator(Eigen::Index n, const std::vector<Eigen::Index>& A) {
    std::vector<ExtReal> v(static_cast<size_t>(n), ExtReal(0));
    for (Eigen::Index w : A) {
        if (w < 0 || w >= n) fail("BadInput", "outcome index out of range");
        v[static_cast<size_t>(w)] = ExtReal(1);
    }
    return Variable(std::move(v));
}

}  // namespace

ExtReal upper_probability(const GambleSpace& space, const std::vector<Eigen::Index>& A) {
    return upper_expectation(space, indicator(space.n(), A));
}

ExtReal lower_probability(const GambleSpace& space, const std::vector<Eigen::Index>& A) {
    std::vector<bool> in(static_cast<size_t>(space.n()), false);
    for (Eigen::Index w : A) in[static_cast<size_t>(w)] = true;
    std::vector<Eigen::Index> comp;
    for (Eigen::Index w = 0; w < space.n(); ++w)
        if (!in[static_cast<size_t>(w)]) comp.push_back(w);
    return sub_pessimistic(ExtReal(1), upper_probability(space, comp));
}

ReplicationCertificate replication_certificate(const GambleSpace& space, const Variable& X,
                                               const Rat& slack) {
    if (slack < 0) fail("BadInput", "negative slack");
    ExtReal price = upper_expectation(space, X);
    if (!price.is_finite()) fail("NoFiniteCertificate", "price is " + price.to_string());

    ReplicationCertificate cert;
    cert.alpha = price.finite();
    cert.slack = 0;
    if (space.gambles.rep == GambleRep::Explicit) {
        for (Eigen::Index j = 0; j < space.gambles.count(); ++j) {
            if (explicit_shortfall(X, space.gambles.gambles[static_cast<size_t>(j)]) == price) {
                cert.gamble_index = j;
                break;
            }
        }
        if (cert.gamble_index < 0) fail("Internal", "no witnessing gamble");
        return cert;
    }

    LPResult r = solve_lp_lexmin(combination_price_lp(space, X));
    if (r.status != LPStatus::Optimal) fail("Internal", "certificate LP not optimal");
    const Eigen::Index k = space.gambles.count();
    cert.coefficients = r.point.head(k);
    // Verify Z + alpha >= X on every finite row.
    Mat G = k > 0 ? space.gambles.generator_matrix(space.n()) : Mat(0, space.n());
    for (Eigen::Index w = 0; w < space.n(); ++w) {
        if (!X(w).is_finite()) continue;
        Rat z(0);
        for (Eigen::Index j = 0; j < k; ++j) z += cert.coefficients(j) * G(j, w);
        if (z + cert.alpha < X(w).finite()) fail("Internal", "certificate fails to dominate");
    }
    return cert;
}

Polytope consistent_polytope(const GambleSpace& space) {
    const Eigen::Index n = space.n();
    Polytope poly;
    for (Eigen::Index w = 0; w < n; ++w) {
        Constraint c;
        c.row = unit_vec(n, w);
        c.rel = Rel::GE;
        c.rhs = 0;
        poly.h_rep.push_back(std::move(c));
    }
    Constraint sum;
    sum.row = Vec::Constant(n, Rat(1));
    sum.rel = Rel::EQ;
    sum.rhs = 1;
    poly.h_rep.push_back(std::move(sum));
    for (const auto& g : space.gambles.gambles) {
        Constraint c;
        c.row = zero_vec(n);
        c.rel = Rel::LE;
        c.rhs = 0;
        for (Eigen::Index w = 0; w < n; ++w) {
            if (g(w).is_finite()) {
                c.row(w) = g(w).finite();
            } else {
                // +inf payoff: consistent measures must make it null.
                Constraint z;
                z.row = unit_vec(n, w);
                z.rel = Rel::EQ;
                z.rhs = 0;
                poly.h_rep.push_back(std::move(z));
            }
        }
        poly.h_rep.push_back(std::move(c));
    }
    return poly;
}

namespace {

LinearProgram polytope_lp(const Polytope& poly, Vec objective, bool maximize) {
    LinearProgram lp;
    lp.maximize = maximize;
    lp.c = std::move(objective);
    lp.rows = poly.h_rep;
    return lp;
}

}  // namespace

bool delta0_nonempty(const GambleSpace& space) {
    Polytope poly = consistent_polytope(space);
    return solve_lp(polytope_lp(poly, zero_vec(space.n()), false)).status == LPStatus::Optimal;
}

std::pair<ExtReal, std::optional<Vec>> consistent_upper_witness(const GambleSpace& space,
                                                                const Variable& X) {
    if (X.size() != space.n()) fail("BadInput", "variable length mismatch");
    const Eigen::Index n = space.n();
    Polytope poly = consistent_polytope(space);

    if (solve_lp(polytope_lp(poly, zero_vec(n), false)).status != LPStatus::Optimal)
        return {ExtReal::neg_inf(), std::nullopt};

    // +inf entries of X dominate when they can carry positive mass.
    Vec inf_mass = zero_vec(n);
    bool has_pos_inf = false;
    for (Eigen::Index w = 0; w < n; ++w) {
        if (X(w).is_pos_inf()) {
            inf_mass(w) = 1;
            has_pos_inf = true;
        }
    }
    if (has_pos_inf) {
        LPResult r = solve_lp(polytope_lp(poly, inf_mass, true));
        if (r.status == LPStatus::Optimal && r.value > 0) return {ExtReal::pos_inf(), std::nullopt};
    }

    // Remaining mass must avoid every infinite entry.
    Polytope restricted = poly;
    Vec obj = zero_vec(n);
    for (Eigen::Index w = 0; w < n; ++w) {
        if (X(w).is_finite()) {
            obj(w) = X(w).finite();
        } else {
            Constraint z;
            z.row = unit_vec(n, w);
            z.rel = Rel::EQ;
            z.rhs = 0;
            restricted.h_rep.push_back(std::move(z));
        }
    }
    LPResult r = solve_lp_lexmin(polytope_lp(restricted, obj, true));
    if (r.status == LPStatus::Infeasible) return {ExtReal::neg_inf(), std::nullopt};
    if (r.status != LPStatus::Optimal) fail("Internal", "consistent LP unbounded");
    return {ExtReal(r.value), r.point};
}

ExtReal consistent_upper(const GambleSpace& space, const Variable& X) {
    return consistent_upper_witness(space, X).first;
}

namespace {

// Explicit/Hull form of the world-first price: max v st v <= <X - Z_j, p> for
// every gamble (or hull generator), p in the simplex, p null on +inf entries.
std::pair<ExtReal, std::optional<Vec>> maxmin_measure_upper(const GambleSpace& space,
                                                            const Variable& X) {
    const Eigen::Index n = space.n();
    const Eigen::Index k = space.gambles.count();
    if (k == 0) return {ExtReal::pos_inf(), std::nullopt};

    std::vector<bool> forced_null(static_cast<size_t>(n), false);
    for (const auto& g : space.gambles.gambles)
        for (Eigen::Index w = 0; w < n; ++w)
            if (!g(w).is_finite()) forced_null[static_cast<size_t>(w)] = true;

    LinearProgram lp;  // variables (p_1..p_n, v)
    lp.maximize = true;
    lp.c = zero_vec(n + 1);
    lp.c(n) = 1;
    for (Eigen::Index w = 0; w < n; ++w) {
        lp.set_lower(w, Rat(0));
        if (forced_null[static_cast<size_t>(w)]) lp.set_upper(w, Rat(0));
    }
    Vec ones = zero_vec(n + 1);
    ones.head(n) = Vec::Constant(n, Rat(1));
    lp.add_row(std::move(ones), Rel::EQ, Rat(1));
    for (const auto& g : space.gambles.gambles) {
        Vec row = zero_vec(n + 1);
        for (Eigen::Index w = 0; w < n; ++w) {
            if (forced_null[static_cast<size_t>(w)]) continue;
            row(w) = X(w).finite() - g(w).finite();
        }
        row(n) = -1;
        lp.add_row(std::move(row), Rel::GE, Rat(0));
    }
    LPResult r = solve_lp_lexmin(lp);
    if (r.status == LPStatus::Infeasible) return {ExtReal::neg_inf(), std::nullopt};
    if (r.status != LPStatus::Optimal) fail("Internal", "measure LP unbounded");
    return {ExtReal(r.value), Vec(r.point.head(n))};
}

}  // namespace

std::pair<ExtReal, std::optional<Vec>> measure_upper_witness(const GambleSpace& space,
                                                             const Variable& X) {
    if (!X.is_real()) fail("BadInput", "measure_upper needs a real-valued variable");
    if (X.size() != space.n()) fail("BadInput", "variable length mismatch");
    switch (space.gambles.rep) {
        case GambleRep::Explicit:
            return maxmin_measure_upper(space, X);
        case GambleRep::Hull: {
            // Generators suffice for the inner infimum over the hull; the
            // convexified-closure route must agree exactly.
            auto direct = maxmin_measure_upper(space, X);
            ExtReal via_price = upper_expectation(space, X);
            if (direct.first != via_price)
                fail("TheoremViolation", "hull measure price mismatch: " +
                                             direct.first.to_string() + " vs " +
                                             via_price.to_string());
            return direct;
        }
        case GambleRep::Cone: {
            // For a cone the inner infimum is -inf unless P is consistent, so
            // the world-first price coincides with the consistent price; the
            // replication route must agree exactly.
            auto via_consistent = consistent_upper_witness(space, X);
            ExtReal via_price = upper_expectation(space, X);
            if (via_consistent.first != via_price)
                fail("TheoremViolation", "cone measure price mismatch: " +
                                             via_consistent.first.to_string() + " vs " +
                                             via_price.to_string());
            return via_consistent;
        }
    }
    fail("Internal", "unreachable");
}

ExtReal measure_upper(const GambleSpace& space, const Variable& X) {
    return measure_upper_witness(space, X).first;
}

PriceChain price_chain(const GambleSpace& space, const Variable& X) {
    PriceChain chain{};
    chain.upper_g = upper_expectation(space, X);
    chain.lower_g = -upper_expectation(space, -X);
    chain.upper_p = measure_upper(space, X);
    chain.lower_p = -measure_upper(space, -X);
    chain.upper_p0 = consistent_upper(space, X);
    chain.lower_p0 = -consistent_upper(space, -X);
    chain.delta0_nonempty = delta0_nonempty(space);

    auto check = [](const ExtReal& a, const ExtReal& b, const char* what) {
        if (!(a <= b))
            fail("TheoremViolation", std::string(what) + ": " + a.to_string() + " > " + b.to_string());
    };
    check(chain.lower_g, chain.lower_p, "lower_g <= lower_p");
    check(chain.lower_p, chain.lower_p0, "lower_p <= lower_p0");
    check(chain.upper_p0, chain.upper_p, "upper_p0 <= upper_p");
    check(chain.upper_p, chain.upper_g, "upper_p <= upper_g");
    if (chain.delta0_nonempty) check(chain.lower_p0, chain.upper_p0, "lower_p0 <= upper_p0");
    return chain;
}

ExtReal minimax_gap(const GambleSpace& space, const Variable& X) {
    return sub_pessimistic(upper_expectation(space, X), measure_upper(space, X));
}

bool char_lower_leq_upper(const GambleSpace& space) { return sum_is_arbitrage_free(space); }

bool dcl_membership(const GambleSpace& space, const Variable& Z) {
    if (!Z.is_real()) fail("BadInput", "dcl_membership needs a real-valued variable");
    return upper_expectation(space, Z) <= ExtReal(0);
}

SupportCheck full_support_check(const GambleSpace& space, long) {
    Polytope poly = consistent_polytope(space);
    SupportCheck out;
    out.full_support = true;
    for (Eigen::Index w = 0; w < space.n(); ++w) {
        LPResult r = solve_lp(polytope_lp(poly, unit_vec(space.n(), w), true));
        bool supported = r.status == LPStatus::Optimal && r.value > 0;
        if (!supported) {
            out.full_support = false;
            out.dead_outcomes.push_back(w);
        }
    }
    return out;
}

namespace {

// Extreme rays of {p >= 0 : <g,p> <= 0 for all g}, via vertices of its unit
// cross-section; these are the facet normals of the double-polar cone.
std::vector<Vec> polar_extreme_rays(const GambleSpace& space, Eigen::Index dim_cap) {
    const Eigen::Index n = space.n();
    Polytope section;
    for (Eigen::Index w = 0; w < n; ++w) {
        Constraint c;
        c.row = unit_vec(n, w);
        c.rel = Rel::GE;
        c.rhs = 0;
        section.h_rep.push_back(std::move(c));
    }
    Constraint sum;
    sum.row = Vec::Constant(n, Rat(1));
    sum.rel = Rel::EQ;
    sum.rhs = 1;
    section.h_rep.push_back(std::move(sum));
    for (const auto& g : space.gambles.gambles) {
        Constraint c;
        c.row = g.as_vec();
        c.rel = Rel::LE;
        c.rhs = 0;
        section.h_rep.push_back(std::move(c));
    }
    return enumerate_vertices(section, dim_cap);
}

std::vector<Vec> downward_rays(Eigen::Index n) {
    std::vector<Vec> rays;
    for (Eigen::Index w = 0; w < n; ++w) rays.push_back(Vec(-unit_vec(n, w)));
    return rays;
}

// Facets of conv(points) + cone(-e_i), read off the vertices of the dual
// polyhedron {(a,b) : a in the simplex, b >= a.v for every point v}.
std::vector<std::pair<Vec, Rat>> polyhedron_halfspaces(const std::vector<Vec>& points,
                                                       Eigen::Index n, Eigen::Index dim_cap) {
    Polytope dual;
    for (Eigen::Index w = 0; w < n; ++w) {
        Constraint c;
        c.row = zero_vec(n + 1);
        c.row(w) = 1;
        c.rel = Rel::GE;
        c.rhs = 0;
        dual.h_rep.push_back(std::move(c));
    }
    Constraint sum;
    sum.row = zero_vec(n + 1);
    sum.row.head(n) = Vec::Constant(n, Rat(1));
    sum.rel = Rel::EQ;
    sum.rhs = 1;
    dual.h_rep.push_back(std::move(sum));
    for (const auto& v : points) {
        Constraint c;
        c.row = zero_vec(n + 1);
        c.row.head(n) = -v;
        c.row(n) = 1;
        c.rel = Rel::GE;
        c.rhs = 0;
        dual.h_rep.push_back(std::move(c));
    }
    std::vector<std::pair<Vec, Rat>> out;
    for (const auto& ab : enumerate_vertices(dual, dim_cap + 1, /*require_bounded=*/false))
        out.emplace_back(Vec(ab.head(n)), ab(n));
    return out;
}

}  // namespace

EffectiveGambles effective_gambles(const GambleSpace& space, EffectiveLevel level,
                                   Eigen::Index dim_cap) {
    const Eigen::Index n = space.n();
    if (n > dim_cap) fail("DimensionCap", "outcome count exceeds geometry cap");
    for (const auto& g : space.gambles.gambles)
        if (!g.is_real()) fail("BadInput", "geometry needs real-valued gambles");

    EffectiveGambles out;
    out.level = level;
    const GambleRep rep = space.gambles.rep;

    auto cone_piece = [&]() {
        ConePiece piece;
        for (const auto& g : space.gambles.gambles) piece.rays.push_back(g.as_vec());
        for (auto& r : downward_rays(n)) piece.rays.push_back(std::move(r));
        for (const auto& p : polar_extreme_rays(space, dim_cap))
            piece.halfspaces.emplace_back(p, Rat(0));
        return piece;
    };
    auto hull_piece = [&]() {
        ConePiece piece;
        for (const auto& g : space.gambles.gambles) piece.points.push_back(g.as_vec());
        piece.rays = downward_rays(n);
        piece.halfspaces = polyhedron_halfspaces(piece.points, n, dim_cap);
        return piece;
    };

    switch (level) {
        case EffectiveLevel::DclClosure:
            if (rep == GambleRep::Explicit) {
                // Union of downward quadrant-translates; one piece per gamble.
                for (const auto& g : space.gambles.gambles) {
                    ConePiece piece;
                    piece.points.push_back(g.as_vec());
                    piece.rays = downward_rays(n);
                    for (Eigen::Index w = 0; w < n; ++w)
                        piece.halfspaces.emplace_back(unit_vec(n, w), g(w).finite());
                    out.pieces.push_back(std::move(piece));
                }
            } else if (rep == GambleRep::Cone) {
                out.pieces.push_back(cone_piece());
            } else {
                out.pieces.push_back(hull_piece());
            }
            break;
        case EffectiveLevel::ConvDcl:
            if (rep == GambleRep::Cone) {
                out.pieces.push_back(cone_piece());
            } else {
                out.pieces.push_back(hull_piece());
            }
            break;
        case EffectiveLevel::PolarPolar: {
            ConePiece piece;
            for (const auto& g : space.gambles.gambles) piece.rays.push_back(g.as_vec());
            for (auto& r : downward_rays(n)) piece.rays.push_back(std::move(r));
            for (const auto& p : polar_extreme_rays(space, dim_cap))
                piece.halfspaces.emplace_back(p, Rat(0));
            out.pieces.push_back(std::move(piece));
            break;
        }
    }
    return out;
}

namespace {

Rat random_rat(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-8, 8);
    std::uniform_int_distribution<long> den(1, 4);
    return make_rat(num(rng), den(rng));
}

Variable random_variable(std::mt19937_64& rng, Eigen::Index n) {
    std::vector<ExtReal> v;
    v.reserve(static_cast<size_t>(n));
    for (Eigen::Index w = 0; w < n; ++w) v.emplace_back(random_rat(rng));
    return Variable(std::move(v));
}

std::string var_string(const Variable& X) {
    std::string s = "(";
    for (Eigen::Index w = 0; w < X.size(); ++w) {
        if (w) s += ",";
        s += X(w).to_string();
    }
    return s + ")";
}

}  // namespace

AxiomReport audit_axioms(const GambleSpace& space, long sample_count, std::uint64_t seed) {
    AxiomReport report;
    report.samples = sample_count;
    const Eigen::Index n = space.n();
    const bool cone = space.gambles.rep == GambleRep::Cone;
    const bool arb_free = is_arbitrage_free(space);
    report.homogeneity_applicable = cone;
    report.subadditivity_applicable = cone && arb_free;
    std::mt19937_64 rng(seed);

    const std::vector<Rat> homogeneity_factors = {make_rat(1, 2), Rat(2), Rat(3)};
    for (long i = 0; i < sample_count; ++i) {
        Variable X = random_variable(rng, n);
        Variable Y = random_variable(rng, n);
        ExtReal ex = upper_expectation(space, X);

        if (report.subadditivity_applicable) {
            Variable XY;
            for (Eigen::Index w = 0; w < n; ++w)
                XY.values.push_back(X(w) + Y(w));
            ExtReal ey = upper_expectation(space, Y);
            bool indeterminate = (ex.is_pos_inf() && ey.is_neg_inf()) ||
                                 (ex.is_neg_inf() && ey.is_pos_inf());
            if (!indeterminate && !(upper_expectation(space, XY) <= ex + ey))
                report.violations.push_back(
                    {"E1", "subadditivity fails at X=" + var_string(X) + " Y=" + var_string(Y)});
        }
        if (report.homogeneity_applicable) {
            for (const Rat& c : homogeneity_factors) {
                Variable cX;
                for (Eigen::Index w = 0; w < n; ++w) cX.values.push_back(X(w) * c);
                if (upper_expectation(space, cX) != ex * c)
                    report.violations.push_back(
                        {"E2", "homogeneity fails at c=" + format_rat(c) + " X=" + var_string(X)});
            }
        }
        {
            // Monotone pair: Y' = X + nonnegative bump.
            Variable Yp;
            for (Eigen::Index w = 0; w < n; ++w) {
                Rat bump = random_rat(rng);
                if (bump < 0) bump = -bump;
                Yp.values.push_back(X(w) + ExtReal(bump));
            }
            if (!(ex <= upper_expectation(space, Yp)))
                report.violations.push_back(
                    {"E3", "monotonicity fails at X=" + var_string(X) + " Y=" + var_string(Yp)});
        }
        {
            Rat c = random_rat(rng);
            Variable C;
            for (Eigen::Index w = 0; w < n; ++w) C.values.emplace_back(c);
            ExtReal ec = upper_expectation(space, C);
            if (ec != ExtReal(c))
                report.violations.push_back({"E4", "constants fail at c=" + format_rat(c) +
                                                       ", price " + ec.to_string()});
        }
    }
    return report;
}

}  // namespace gtp
