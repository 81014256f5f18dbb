#pragma once

#include "superkernel/superdomain.hpp"

#include <gmpxx.h>

#include <vector>

namespace superkernel {

/// Dense univariate polynomial over Q, coefficient of t^k at index k.
using UnivariatePoly = std::vector<mpq_class>;

/// A real root: exactly lo when exact, otherwise the unique root in the
/// open interval (lo, hi).
struct RootEnclosure {
    mpq_class lo, hi;
    bool exact = false;

    Interval as_interval() const { return exact ? Interval::point(lo) : Interval::open(lo, hi); }
};

/// Real roots inside window, ascending.  Rational roots are found exactly
/// (rational root test), the others are isolated with Sturm sequences to
/// intervals of width at most max_width.  p must be nonzero.
std::vector<RootEnclosure> isolate_real_roots(const UnivariatePoly& p, const Interval& window,
                                              const mpq_class& max_width = mpq_class(1, 1024));

/// Number of distinct real roots in the half open interval (a, b].
std::size_t count_roots(const UnivariatePoly& p, const mpq_class& a, const mpq_class& b);

mpq_class evaluate(const UnivariatePoly& p, const mpq_class& x);

}  // namespace superkernel
