#pragma once

#include "gtp/scalar.hpp"

namespace gtp {

// Certified rational enclosure: lo <= f(x) <= hi.
struct Bounds {
    Rat lo, hi;
};

// Enclosures of exp, log and sqrt with outward rounding; the enclosure width is
// at most 2^-bits (absolute) plus the rounding grid of the same precision.
Bounds exp_bounds(const Rat& x, unsigned bits = 64);
Bounds log_bounds(const Rat& x, unsigned bits = 64);  // requires x > 0
Bounds sqrt_bounds(const Rat& x, unsigned bits = 64); // requires x >= 0

}  // namespace gtp
