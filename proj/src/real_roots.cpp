#include "superkernel/real_roots.hpp"

#include "superkernel/errors.hpp"

#include <algorithm>

namespace superkernel {

namespace {

void trim(UnivariatePoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

UnivariatePoly derivative(const UnivariatePoly& p) {
    UnivariatePoly d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
    trim(d);
    return d;
}

/// Remainder of a by b (b nonzero).
UnivariatePoly remainder(UnivariatePoly a, const UnivariatePoly& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= f * b[k];
        a.pop_back();
        trim(a);
    }
    return a;
}

UnivariatePoly quotient(UnivariatePoly a, const UnivariatePoly& b) {
    trim(a);
    if (a.size() < b.size()) return {};
    UnivariatePoly q(a.size() - b.size() + 1);
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        q[shift] = f;
        for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= f * b[k];
        a.pop_back();
        trim(a);
    }
    trim(q);
    return q;
}

UnivariatePoly gcd(UnivariatePoly a, UnivariatePoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

int sign_at(const UnivariatePoly& p, const mpq_class& x) { return sgn(evaluate(p, x)); }

std::vector<UnivariatePoly> sturm_sequence(const UnivariatePoly& p) {
    std::vector<UnivariatePoly> seq{p, derivative(p)};
    while (!seq.back().empty()) {
        auto r = remainder(seq[seq.size() - 2], seq.back());
        for (auto& c : r) c = -c;
        if (r.empty()) break;
        seq.push_back(std::move(r));
    }
    if (seq.back().empty()) seq.pop_back();
    return seq;
}

int sign_changes(const std::vector<UnivariatePoly>& seq, const mpq_class& x) {
    int changes = 0, last = 0;
    for (const auto& p : seq) {
        int s = sign_at(p, x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

std::vector<mpz_class> divisors(mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> out;
    if (n == 0) return out;
    for (mpz_class d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    return out;
}

/// Pulls out every rational root (rational root test on the integer
/// multiple of p); returns the roots and leaves the cofactor in p.
std::vector<mpq_class> extract_rational_roots(UnivariatePoly& p) {
    std::vector<mpq_class> roots;
    std::size_t zeros = 0;
    while (zeros < p.size() && sgn(p[zeros]) == 0) ++zeros;
    if (zeros > 0) {
        roots.emplace_back(0);
        p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(zeros));
    }
    if (p.size() <= 1) return roots;
    mpz_class lcm = 1;
    for (const auto& c : p) lcm = lcm * c.get_den() / gcd(lcm, c.get_den());
    mpz_class a0 = mpz_class(p.front() * lcm), an = mpz_class(p.back() * lcm);
    // trial division is only attempted for moderately sized coefficients
    if (abs(a0) > mpz_class("1000000000000") || abs(an) > mpz_class("1000000000000")) return roots;
    auto num = divisors(a0), den = divisors(an);
    std::vector<mpq_class> candidates;
    for (const auto& a : num)
        for (const auto& b : den) {
            mpq_class r(a, b);
            r.canonicalize();
            candidates.push_back(r);
            candidates.push_back(-r);
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& r : candidates) {
        if (p.size() <= 1) break;
        if (sgn(evaluate(p, r)) != 0) continue;
        roots.push_back(r);
        UnivariatePoly lin{-r, mpq_class(1)};
        do p = quotient(p, lin);
        while (p.size() > 1 && sgn(evaluate(p, r)) == 0);
    }
    return roots;
}

}  // namespace

mpq_class evaluate(const UnivariatePoly& p, const mpq_class& x) {
    mpq_class v = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
    return v;
}

std::size_t count_roots(const UnivariatePoly& p, const mpq_class& a, const mpq_class& b) {
    UnivariatePoly q = p;
    trim(q);
    if (q.empty()) throw DomainError("count_roots: zero polynomial");
    auto g = gcd(q, derivative(q));
    if (g.size() > 1) q = quotient(q, g);
    auto seq = sturm_sequence(q);
    return static_cast<std::size_t>(sign_changes(seq, a) - sign_changes(seq, b));
}

std::vector<RootEnclosure> isolate_real_roots(const UnivariatePoly& p_in, const Interval& window,
                                              const mpq_class& max_width) {
    UnivariatePoly p = p_in;
    trim(p);
    if (p.empty()) throw DomainError("isolate_real_roots: zero polynomial");
    std::vector<RootEnclosure> out;
    for (const auto& r : extract_rational_roots(p))
        if (window.contains(r)) out.push_back({r, r, true});
    if (p.size() > 1) {
        auto g = gcd(p, derivative(p));
        if (g.size() > 1) p = quotient(p, g);
        auto seq = sturm_sequence(p);
        // Cauchy bound
        mpq_class bound = 0;
        for (std::size_t k = 0; k + 1 < p.size(); ++k) bound = std::max(bound, mpq_class(abs(p[k] / p.back())));
        bound += 1;
        mpq_class lo = window.lo ? std::max(*window.lo, mpq_class(-bound)) : mpq_class(-bound);
        mpq_class hi = window.hi ? std::min(*window.hi, bound) : bound;
        // the remaining roots are irrational, so they never sit on a rational endpoint
        struct Piece {
            mpq_class a, b;
        };
        std::vector<Piece> stack;
        if (lo < hi) stack.push_back({lo, hi});
        while (!stack.empty()) {
            auto [a, b] = stack.back();
            stack.pop_back();
            int n = sign_changes(seq, a) - sign_changes(seq, b);
            if (n == 0) continue;
            if (n == 1 && b - a <= max_width) {
                out.push_back({a, b, false});
                continue;
            }
            mpq_class m = (a + b) / 2;
            stack.push_back({m, b});
            stack.push_back({a, m});
        }
    }
    std::sort(out.begin(), out.end(), [](const RootEnclosure& x, const RootEnclosure& y) { return x.lo < y.lo; });
    return out;
}

}  // namespace superkernel
