#include "gtp/extreal.hpp"

#include <ostream>

namespace gtp {

bool ExtReal::operator<(const ExtReal& o) const {
    if (kind_ == Kind::Finite && o.kind_ == Kind::Finite) return value_ < o.value_;
    return static_cast<int>(kind_) < static_cast<int>(o.kind_);
}

ExtReal ExtReal::operator-() const {
    switch (kind_) {
        case Kind::PosInf: return neg_inf();
        case Kind::NegInf: return pos_inf();
        default: return ExtReal(Rat(-value_));
    }
}

ExtReal ExtReal::operator+(const ExtReal& o) const {
    if (is_finite() && o.is_finite()) return ExtReal(Rat(value_ + o.value_));
    if (is_pos_inf() && o.is_neg_inf()) fail("IndeterminateSum", "inf + (-inf)");
    if (is_neg_inf() && o.is_pos_inf()) fail("IndeterminateSum", "(-inf) + inf");
    if (is_pos_inf() || o.is_pos_inf()) return pos_inf();
    return neg_inf();
}

ExtReal ExtReal::operator*(const Rat& c) const {
    if (c == 0) return ExtReal(Rat(0));
    if (is_finite()) return ExtReal(Rat(value_ * c));
    bool pos = is_pos_inf() == (c > 0);
    return pos ? pos_inf() : neg_inf();
}

std::string ExtReal::to_string() const {
    switch (kind_) {
        case Kind::PosInf: return "inf";
        case Kind::NegInf: return "-inf";
        default: return format_rat(value_);
    }
}

ExtReal ExtReal::parse(const std::string& s) {
    if (s == "inf" || s == "+inf") return pos_inf();
    if (s == "-inf") return neg_inf();
    return ExtReal(parse_rat(s));
}

ExtReal sub_pessimistic(const ExtReal& a, const ExtReal& b) {
    if (a.is_pos_inf() && b.is_pos_inf()) return ExtReal::pos_inf();
    if (a.is_neg_inf() && b.is_neg_inf()) return ExtReal::pos_inf();
    return a + (-b);
}

ExtReal sup_finite_list(const std::vector<ExtReal>& xs) {
    if (xs.empty()) fail("EmptyDomain", "sup of empty list");
    ExtReal best = xs.front();
    for (const auto& x : xs)
        if (best < x) best = x;
    return best;
}

ExtReal inf_finite_list(const std::vector<ExtReal>& xs) {
    if (xs.empty()) fail("EmptyDomain", "inf of empty list");
    ExtReal best = xs.front();
    for (const auto& x : xs)
        if (x < best) best = x;
    return best;
}

std::ostream& operator<<(std::ostream& os, const ExtReal& x) {
    return os << x.to_string();
}

}  // namespace gtp
