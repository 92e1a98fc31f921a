#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gtp/gamblespace.hpp"

namespace gtp {

// Least capital from which an available gamble replicates X; +inf over an
// empty set.  Infinite X entries follow the engine's extended conventions.
ExtReal upper_expectation(const GambleSpace& space, const Variable& X);
ExtReal lower_expectation(const GambleSpace& space, const Variable& X);

ExtReal upper_probability(const GambleSpace& space, const std::vector<Eigen::Index>& A);
ExtReal lower_probability(const GambleSpace& space, const std::vector<Eigen::Index>& A);

struct ReplicationCertificate {
    Rat alpha;
    Vec coefficients;          // Cone/Hull coefficient vector
    Eigen::Index gamble_index = -1;  // Explicit argmin index
    Rat slack;                 // alpha minus the exact price (always 0 here)
};

// Certificate with Z + alpha >= X pointwise; requires a finite price.
ReplicationCertificate replication_certificate(const GambleSpace& space, const Variable& X,
                                               const Rat& slack = Rat(0));

// H-representation of the consistent measures: the probability simplex cut by
// <g,p> <= 0 per gamble; outcomes where a gamble is +inf must be null.
Polytope consistent_polytope(const GambleSpace& space);

bool delta0_nonempty(const GambleSpace& space);

// sup of E_P X over consistent P; -inf when no consistent measure exists.
ExtReal consistent_upper(const GambleSpace& space, const Variable& X);
// Same value plus the lexicographically smallest optimal measure when finite.
std::pair<ExtReal, std::optional<Vec>> consistent_upper_witness(const GambleSpace& space,
                                                                const Variable& X);

// World-first price sup_P inf_Z E_P[X - Z]; real-valued X only.
ExtReal measure_upper(const GambleSpace& space, const Variable& X);
std::pair<ExtReal, std::optional<Vec>> measure_upper_witness(const GambleSpace& space,
                                                             const Variable& X);

struct PriceChain {
    ExtReal lower_g, lower_p, lower_p0, upper_p0, upper_p, upper_g;
    bool delta0_nonempty = false;
};

// All six prices with the ordering invariants asserted ("TheoremViolation"
// signals a broken invariant and is never expected).
PriceChain price_chain(const GambleSpace& space, const Variable& X);

ExtReal minimax_gap(const GambleSpace& space, const Variable& X);

// Equivalent to: lower price <= upper price for every variable.
bool char_lower_leq_upper(const GambleSpace& space);

enum class EffectiveLevel { DclClosure, ConvDcl, PolarPolar };

// One polyhedral piece: conv(points) + cone(rays), plus an H-description
// {z : <normal,z> <= offset} when available.
struct ConePiece {
    std::vector<Vec> points;
    std::vector<Vec> rays;
    std::vector<std::pair<Vec, Rat>> halfspaces;
};

struct EffectiveGambles {
    EffectiveLevel level;
    std::vector<ConePiece> pieces;  // non-convex levels may need several pieces
};

// Descriptive geometry of the effective gamble set at each price level.
EffectiveGambles effective_gambles(const GambleSpace& space, EffectiveLevel level,
                                   Eigen::Index dim_cap = 8);

struct AxiomViolation {
    std::string axiom;
    std::string detail;
};

struct AxiomReport {
    long samples = 0;
    bool subadditivity_applicable = false;
    bool homogeneity_applicable = false;
    std::vector<AxiomViolation> violations;
    bool passed() const { return violations.empty(); }
};

// Randomized audit of subadditivity, positive homogeneity, monotonicity and
// the constants axiom.
AxiomReport audit_axioms(const GambleSpace& space, long sample_count, std::uint64_t seed);

}  // namespace gtp
