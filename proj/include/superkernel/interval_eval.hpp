#pragma once

#include "superkernel/superdomain.hpp"

#include <gmpxx.h>

namespace superkernel {

/// An endpoint of a range: a rational or +-infinity, attained or not.
struct Bound {
    int inf = 0;  // -1, 0 or +1
    mpq_class value;
    bool open = false;
};

/// Enclosure of the values of a polynomial over a box.  The enclosure is
/// exact at the endpoints for single monomials and conservative for sums.
struct Range {
    Bound lo, hi;

    bool inside(const Interval& target) const;
    bool excludes_zero() const;
    std::string to_string() const;
};

Range range_of(const Interval& iv);
Range add(const Range& a, const Range& b);
Range multiply(const Range& a, const Range& b);
Range scale(const Range& a, const mpq_class& c);
Range power(const Range& a, unsigned n);

/// Range of an odd-free polynomial with rational coefficients over box.
/// Terms involving odd generators are ignored (they vanish at points).
Range evaluate_range(const SuperPolynomial& f, const Box& box);

}  // namespace superkernel
