#include "gtp/scalar.hpp"

namespace gtp {

std::string format_rat(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat parse_rat(const std::string& s) {
    if (s.empty()) fail("ParseError", "empty rational literal");
    Rat r;
    if (r.set_str(s, 10) != 0) fail("ParseError", "bad rational literal '" + s + "'");
    if (r.get_den() == 0) fail("ParseError", "zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

Rat round_down(const Rat& r, unsigned bits) {
    Int scaled_num = r.get_num() << bits;
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), r.get_den().get_mpz_t());
    Rat out(q, Int(1) << bits);
    out.canonicalize();
    return out;
}

Rat round_up(const Rat& r, unsigned bits) {
    Int scaled_num = r.get_num() << bits;
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), r.get_den().get_mpz_t());
    Rat out(q, Int(1) << bits);
    out.canonicalize();
    return out;
}

bool lex_less(const Vec& a, const Vec& b) {
    Eigen::Index n = std::min(a.size(), b.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        if (a(i) != b(i)) return a(i) < b(i);
    }
    return a.size() < b.size();
}

std::vector<Rat> to_std(const Vec& v) {
    return std::vector<Rat>(v.data(), v.data() + v.size());
}

Vec from_std(const std::vector<Rat>& v) {
    Vec out(static_cast<Eigen::Index>(v.size()));
    for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = v[static_cast<size_t>(i)];
    return out;
}

}  // namespace gtp
