#pragma once

// Test-only generators and independent oracles.  Nothing here calls the
// kernel code paths it is used to check.

#include "superkernel/polynomial.hpp"
#include "superkernel/rng.hpp"

#include <algorithm>
#include <functional>
#include <tuple>
#include <map>
#include <vector>

namespace oracle {

using superkernel::ContextPtr;
using superkernel::Monomial;
using superkernel::Parity;
using superkernel::Rng;
using superkernel::Scalar;
using superkernel::SuperPolynomial;

inline Scalar small_rational(Rng& rng, int range = 4) {
    long num = rng.uniform(-range, range);
    long den = rng.uniform(1, 3);
    return Scalar::rational(num, den);
}

inline Scalar small_nonzero(Rng& rng, int range = 4) {
    Scalar s;
    do s = small_rational(rng, range);
    while (s.is_zero());
    return s;
}

inline Monomial random_monomial(const ContextPtr& ctx, Rng& rng, int degree) {
    Monomial m;
    m.exps.assign(ctx->num_even(), 0);
    int left = degree;
    while (left > 0) {
        bool pick_odd = ctx->num_odd() > 0 && (ctx->num_even() == 0 || rng.coin(40));
        if (pick_odd) {
            auto k = static_cast<int>(rng.uniform(0, static_cast<std::int64_t>(ctx->num_odd()) - 1));
            std::uint64_t bit = std::uint64_t{1} << k;
            if (m.odd & bit) {
                if (ctx->num_even() == 0 && __builtin_popcountll(m.odd) == static_cast<int>(ctx->num_odd())) break;
                continue;
            }
            m.odd |= bit;
        } else {
            if (ctx->num_even() == 0) break;
            m.exps[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(ctx->num_even()) - 1))]++;
        }
        --left;
    }
    return m;
}

inline SuperPolynomial random_poly(const ContextPtr& ctx, Rng& rng, int max_degree, int max_terms) {
    SuperPolynomial f(ctx);
    int terms = static_cast<int>(rng.uniform(0, max_terms));
    for (int k = 0; k < terms; ++k)
        f.add_term(random_monomial(ctx, rng, static_cast<int>(rng.uniform(0, max_degree))), small_rational(rng));
    return f;
}

/// Homogeneous in parity (and, when exact_degree >= 0, in total degree).
inline SuperPolynomial random_homogeneous(const ContextPtr& ctx, Rng& rng, Parity parity, int max_degree,
                                          int max_terms, int exact_degree = -1) {
    SuperPolynomial f(ctx);
    int terms = static_cast<int>(rng.uniform(1, max_terms));
    for (int tries = 0; tries < 50 && static_cast<int>(f.size()) < terms; ++tries) {
        int d = exact_degree >= 0 ? exact_degree : static_cast<int>(rng.uniform(0, max_degree));
        Monomial m = random_monomial(ctx, rng, d);
        if (m.parity() != parity || m.degree() != d) continue;
        f.add_term(m, small_nonzero(rng));
    }
    return f;
}

/// Word-level product: concatenate generator words and bubble sort them,
/// flipping the sign for each swap of two odd letters.
inline SuperPolynomial word_product(const SuperPolynomial& a, const SuperPolynomial& b) {
    const ContextPtr& ctx = a.context();
    auto to_word = [&](const Monomial& m) {
        std::vector<int> w;  // even k -> k, odd k -> 1000 + k
        for (std::size_t k = 0; k < m.exps.size(); ++k)
            for (int e = 0; e < m.exps[k]; ++e) w.push_back(static_cast<int>(k));
        for (int k = 0; k < 64; ++k)
            if (m.odd >> k & 1) w.push_back(1000 + k);
        return w;
    };
    SuperPolynomial out(ctx);
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            std::vector<int> w = to_word(ma);
            auto wb = to_word(mb);
            w.insert(w.end(), wb.begin(), wb.end());
            int sign = 1;
            for (std::size_t i = 0; i < w.size(); ++i)
                for (std::size_t j = 0; j + 1 < w.size() - i; ++j)
                    if (w[j] > w[j + 1]) {
                        if (w[j] >= 1000 && w[j + 1] >= 1000) sign = -sign;
                        std::swap(w[j], w[j + 1]);
                    }
            bool zero = false;
            Monomial m;
            m.exps.assign(ctx->num_even(), 0);
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (w[i] >= 1000) {
                    if (i + 1 < w.size() && w[i + 1] == w[i]) zero = true;
                    m.odd |= std::uint64_t{1} << (w[i] - 1000);
                } else {
                    m.exps[static_cast<std::size_t>(w[i])]++;
                }
            }
            if (zero) continue;
            Scalar c = ca * cb;
            if (sign < 0) c = -c;
            out.add_term(m, c);
        }
    return out;
}

/// Dense Gaussian elimination: is target in the linear span of vectors?
template <class Key>
bool dense_span_contains(const std::vector<std::map<Key, Scalar>>& vectors, const std::map<Key, Scalar>& target) {
    std::vector<Key> keys;
    auto collect = [&](const std::map<Key, Scalar>& v) {
        for (const auto& [k, c] : v)
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
    };
    for (const auto& v : vectors) collect(v);
    for (const auto& [k, c] : target)
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) return c.is_zero();
    std::size_t rows = keys.size(), cols = vectors.size();
    std::vector<std::vector<Scalar>> a(rows, std::vector<Scalar>(cols + 1));
    for (std::size_t j = 0; j < cols; ++j)
        for (const auto& [k, c] : vectors[j])
            a[static_cast<std::size_t>(std::find(keys.begin(), keys.end(), k) - keys.begin())][j] = c;
    for (const auto& [k, c] : target)
        a[static_cast<std::size_t>(std::find(keys.begin(), keys.end(), k) - keys.begin())][cols] = c;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        Scalar inv = a[r][c].inverse();
        for (auto& x : a[r]) x *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Scalar f = a[i][c];
            for (std::size_t j = 0; j <= cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (!a[i][cols].is_zero()) return false;
    return true;
}

struct MonomialKey {
    std::vector<std::uint16_t> exps;
    std::uint64_t odd;
    bool operator<(const MonomialKey& o) const { return std::tie(exps, odd) < std::tie(o.exps, o.odd); }
    bool operator==(const MonomialKey& o) const = default;
};

inline std::map<MonomialKey, Scalar> as_map(const SuperPolynomial& f) {
    std::map<MonomialKey, Scalar> out;
    for (const auto& [m, c] : f.terms()) out[{m.exps, m.odd}] = c;
    return out;
}

/// Every monomial of the context with total degree exactly d.
inline std::vector<Monomial> monomials_of_degree(const ContextPtr& ctx, int d) {
    std::vector<Monomial> out;
    std::size_t n = ctx->num_even(), q = ctx->num_odd();
    for (std::uint64_t odd = 0; odd < (std::uint64_t{1} << q); ++odd) {
        int od = __builtin_popcountll(odd);
        if (od > d) continue;
        int left = d - od;
        std::vector<std::uint16_t> e(n, 0);
        std::function<void(std::size_t, int)> rec = [&](std::size_t k, int rem) {
            if (k + 1 >= n) {
                if (n == 0) {
                    if (rem == 0) out.push_back(Monomial{{}, odd});
                    return;
                }
                e[k] = static_cast<std::uint16_t>(rem);
                out.push_back(Monomial{e, odd});
                return;
            }
            for (int v = 0; v <= rem; ++v) {
                e[k] = static_cast<std::uint16_t>(v);
                rec(k + 1, rem - v);
            }
        };
        rec(0, left);
    }
    return out;
}

/// Membership in a homogeneous ideal by spanning its degree-d pieces with
/// generator * monomial products.
inline bool homogeneous_ideal_contains(const std::vector<SuperPolynomial>& gens, const SuperPolynomial& f) {
    const ContextPtr& ctx = f.context();
    std::map<int, SuperPolynomial> by_degree;
    for (const auto& [m, c] : f.terms()) by_degree.try_emplace(m.degree(), ctx).first->second.add_term(m, c);
    for (const auto& [d, piece] : by_degree) {
        std::vector<std::map<MonomialKey, Scalar>> span;
        for (const auto& g : gens) {
            int dg = g.degree();
            if (g.is_zero() || dg > d) continue;
            for (const auto& m : monomials_of_degree(ctx, d - dg)) {
                auto prod = word_product(g, SuperPolynomial::monomial(ctx, m));
                if (!prod.is_zero()) span.push_back(as_map(prod));
            }
        }
        if (!dense_span_contains(span, as_map(piece))) return false;
    }
    return true;
}

/// d/dt_k of a polynomial free of odd generators.
inline SuperPolynomial derivative(const SuperPolynomial& f, std::size_t k) {
    SuperPolynomial out(f.context());
    for (const auto& [m, c] : f.terms()) {
        if (m.exps[k] == 0) continue;
        Monomial d = m;
        d.exps[k]--;
        out.add_term(d, c * Scalar(static_cast<long>(m.exps[k])));
    }
    return out;
}

}  // namespace oracle
