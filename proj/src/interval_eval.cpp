#include "superkernel/interval_eval.hpp"

#include "superkernel/errors.hpp"

#include <array>

namespace superkernel {

namespace {

int compare(const Bound& a, const Bound& b) {
    if (a.inf != b.inf) return a.inf < b.inf ? -1 : 1;
    if (a.inf != 0) return 0;
    return cmp(a.value, b.value) < 0 ? -1 : (a.value == b.value ? 0 : 1);
}

Bound finite(const mpq_class& v, bool open) { return {0, v, open}; }
Bound infinity(int sign) { return {sign, 0, true}; }

Bound negate(const Bound& b) { return {-b.inf, -b.value, b.open}; }

Bound times(const Bound& a, const Bound& b) {
    bool a_zero = a.inf == 0 && sgn(a.value) == 0;
    bool b_zero = b.inf == 0 && sgn(b.value) == 0;
    // a closed zero endpoint is attained, so the product 0 is attained too
    if (a_zero && !a.open) return finite(0, false);
    if (b_zero && !b.open) return finite(0, false);
    if (a_zero || b_zero) return finite(0, true);
    if (a.inf != 0 || b.inf != 0) {
        int sa = a.inf != 0 ? a.inf : sgn(a.value);
        int sb = b.inf != 0 ? b.inf : sgn(b.value);
        return infinity(sa * sb);
    }
    return finite(a.value * b.value, a.open || b.open);
}

/// Keeps the smaller (lower) bound; ties are attained if either is.
void take_lower(Bound& acc, const Bound& b) {
    int c = compare(b, acc);
    if (c < 0) acc = b;
    else if (c == 0) acc.open = acc.open && b.open;
}

void take_upper(Bound& acc, const Bound& b) {
    int c = compare(b, acc);
    if (c > 0) acc = b;
    else if (c == 0) acc.open = acc.open && b.open;
}

std::string bound_string(const Bound& b) {
    if (b.inf < 0) return "-inf";
    if (b.inf > 0) return "inf";
    return b.value.get_str();
}

}  // namespace

bool Range::inside(const Interval& t) const {
    if (t.lo) {
        if (lo.inf < 0) return false;
        if (lo.inf == 0) {
            if (lo.value < *t.lo) return false;
            if (lo.value == *t.lo && !t.lo_closed && !lo.open) return false;
        }
    }
    if (t.hi) {
        if (hi.inf > 0) return false;
        if (hi.inf == 0) {
            if (hi.value > *t.hi) return false;
            if (hi.value == *t.hi && !t.hi_closed && !hi.open) return false;
        }
    }
    return true;
}

bool Range::excludes_zero() const {
    if (lo.inf == 0 && (sgn(lo.value) > 0 || (sgn(lo.value) == 0 && lo.open))) return true;
    if (hi.inf == 0 && (sgn(hi.value) < 0 || (sgn(hi.value) == 0 && hi.open))) return true;
    return false;
}

std::string Range::to_string() const {
    return std::string(lo.open ? "(" : "[") + bound_string(lo) + ", " + bound_string(hi) + (hi.open ? ")" : "]");
}

Range range_of(const Interval& iv) {
    Range r;
    r.lo = iv.lo ? finite(*iv.lo, !iv.lo_closed) : infinity(-1);
    r.hi = iv.hi ? finite(*iv.hi, !iv.hi_closed) : infinity(1);
    return r;
}

Range add(const Range& a, const Range& b) {
    Range r;
    if (a.lo.inf < 0 || b.lo.inf < 0) r.lo = infinity(-1);
    else r.lo = finite(a.lo.value + b.lo.value, a.lo.open || b.lo.open);
    if (a.hi.inf > 0 || b.hi.inf > 0) r.hi = infinity(1);
    else r.hi = finite(a.hi.value + b.hi.value, a.hi.open || b.hi.open);
    return r;
}

Range multiply(const Range& a, const Range& b) {
    std::array<Bound, 4> corners{times(a.lo, b.lo), times(a.lo, b.hi), times(a.hi, b.lo), times(a.hi, b.hi)};
    Range r{corners[0], corners[0]};
    for (const auto& c : corners) {
        take_lower(r.lo, c);
        take_upper(r.hi, c);
    }
    return r;
}

Range scale(const Range& a, const mpq_class& c) {
    if (sgn(c) == 0) return {finite(0, false), finite(0, false)};
    Range r = a;
    if (r.lo.inf == 0) r.lo.value *= c;
    if (r.hi.inf == 0) r.hi.value *= c;
    if (sgn(c) < 0) {
        std::swap(r.lo, r.hi);
        r.lo.inf = -r.lo.inf;
        r.hi.inf = -r.hi.inf;
    }
    return r;
}

Range power(const Range& a, unsigned n) {
    if (n == 0) return {finite(1, false), finite(1, false)};
    auto pow_bound = [n](const Bound& b) {
        if (b.inf != 0) return infinity((n % 2 == 0) ? 1 : b.inf);
        mpq_class v = 1;
        for (unsigned k = 0; k < n; ++k) v *= b.value;
        return finite(v, b.open);
    };
    auto nonneg = [](const Bound& b) { return b.inf > 0 || (b.inf == 0 && sgn(b.value) >= 0); };
    auto nonpos = [](const Bound& b) { return b.inf < 0 || (b.inf == 0 && sgn(b.value) <= 0); };
    if (n % 2 == 1 || nonneg(a.lo)) return {pow_bound(a.lo), pow_bound(a.hi)};
    if (nonpos(a.hi)) return {pow_bound(a.hi), pow_bound(a.lo)};
    // the interval straddles zero: the minimum 0 is attained
    Range r{finite(0, false), pow_bound(a.hi)};
    take_upper(r.hi, pow_bound(negate(a.lo)));
    return r;
}

Range evaluate_range(const SuperPolynomial& f, const Box& box) {
    if (box.size() != f.context()->num_even()) throw DomainError("evaluate_range: box dimension mismatch");
    Range total{finite(0, false), finite(0, false)};
    for (const auto& [m, c] : f.terms()) {
        if (m.odd != 0) continue;
        if (!c.is_k_valued()) throw ValueFieldError("evaluate_range: coefficient " + c.to_string() + " is not real");
        Range term{finite(1, false), finite(1, false)};
        for (std::size_t k = 0; k < m.exps.size(); ++k)
            if (m.exps[k]) term = multiply(term, power(range_of(box[k]), m.exps[k]));
        total = add(total, scale(term, c.re()));
    }
    return total;
}

}  // namespace superkernel
