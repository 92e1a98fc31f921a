#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <string>
#include <vector>

#include "gtp/error.hpp"

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
    using Real = mpq_class;
    using NonInteger = mpq_class;
    using Nested = mpq_class;
    using Literal = long;

    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }

    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 150,
        MulCost = 100
    };
};

}  // namespace Eigen

namespace gtp {

using Rat = mpq_class;
using Int = mpz_class;

using Vec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using Mat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

std::string format_rat(const Rat& r);
Rat parse_rat(const std::string& s);

// Directed rounding to denominator 2^bits.
Rat round_down(const Rat& r, unsigned bits);
Rat round_up(const Rat& r, unsigned bits);

inline Vec zero_vec(Eigen::Index n) { return Vec::Constant(n, Rat(0)); }

inline Vec unit_vec(Eigen::Index n, Eigen::Index i) {
    Vec e = zero_vec(n);
    e(i) = 1;
    return e;
}

// Lexicographic order on rational vectors (used for deterministic output ordering).
bool lex_less(const Vec& a, const Vec& b);

std::vector<Rat> to_std(const Vec& v);
Vec from_std(const std::vector<Rat>& v);

}  // namespace gtp
