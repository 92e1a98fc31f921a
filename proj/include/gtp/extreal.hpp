#pragma once

#include <compare>
#include <iosfwd>
#include <string>
#include <vector>

#include "gtp/scalar.hpp"

namespace gtp {

// Rational number extended with +inf/-inf.  Subtraction follows the pessimistic
// convention inf - inf = (-inf) - (-inf) = +inf; the indeterminate sum
// inf + (-inf) is an error rather than a silent choice.
class ExtReal {
public:
    ExtReal() : kind_(Kind::Finite), value_(0) {}
    ExtReal(Rat v) : kind_(Kind::Finite), value_(std::move(v)) {}
    ExtReal(long v) : kind_(Kind::Finite), value_(v) {}

    static ExtReal pos_inf() { return ExtReal(Kind::PosInf); }
    static ExtReal neg_inf() { return ExtReal(Kind::NegInf); }

    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_pos_inf() const { return kind_ == Kind::PosInf; }
    bool is_neg_inf() const { return kind_ == Kind::NegInf; }

    const Rat& finite() const {
        if (!is_finite()) fail("NotFinite", "finite() on " + to_string());
        return value_;
    }

    bool operator==(const ExtReal& o) const {
        if (kind_ != o.kind_) return false;
        return kind_ != Kind::Finite || value_ == o.value_;
    }
    bool operator!=(const ExtReal& o) const { return !(*this == o); }
    bool operator<(const ExtReal& o) const;
    bool operator<=(const ExtReal& o) const { return *this < o || *this == o; }
    bool operator>(const ExtReal& o) const { return o < *this; }
    bool operator>=(const ExtReal& o) const { return o <= *this; }

    ExtReal operator-() const;
    // Throws "IndeterminateSum" on inf + (-inf).
    ExtReal operator+(const ExtReal& o) const;
    // Scalar multiple; c = 0 gives 0 even against infinities.
    ExtReal operator*(const Rat& c) const;

    std::string to_string() const;
    static ExtReal parse(const std::string& s);

private:
    enum class Kind { NegInf, Finite, PosInf };
    explicit ExtReal(Kind k) : kind_(k), value_(0) {}

    Kind kind_;
    Rat value_;
};

// a - b with the pessimistic infinity convention; total.
ExtReal sub_pessimistic(const ExtReal& a, const ExtReal& b);

// Maximum under the total order; empty input is an error ("EmptyDomain").
ExtReal sup_finite_list(const std::vector<ExtReal>& xs);
ExtReal inf_finite_list(const std::vector<ExtReal>& xs);

std::ostream& operator<<(std::ostream& os, const ExtReal& x);

}  // namespace gtp
