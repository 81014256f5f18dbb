#pragma once

// Random algebra morphisms and coordinate helpers for Weil functor tests.

#include "superkernel/errors.hpp"
#include "superkernel/weil_functor.hpp"
#include "support/morphism_gen.hpp"

#include <algorithm>
#include <optional>

namespace oracle {

using superkernel::AlgebraMorphism;
using superkernel::ContextPtr;

/// Random local morphisms a -> b: generator images drawn from the maximal
/// ideal until every relation is killed.
inline std::optional<AlgebraMorphism> random_algebra_morphism(const WeilPtr& a, const WeilPtr& b, Rng& rng) {
    for (int attempt = 0; attempt < 20; ++attempt) {
        std::vector<AlgebraElement> images;
        std::size_t p = a->context()->num_even();
        for (std::size_t k = 0; k < a->num_generators(); ++k) {
            auto e = oracle::random_homogeneous_element(b, rng, k < p ? superkernel::Parity::Even : superkernel::Parity::Odd);
            auto c = e.coefficients();
            c[0] = Scalar();
            images.emplace_back(b, std::move(c));
        }
        try {
            return AlgebraMorphism::make(a, b, std::move(images));
        } catch (const superkernel::NotAMorphismError&) {
        }
    }
    return std::nullopt;
}

/// Copies a polynomial in the base coordinates into the total's context
/// (base coordinates come first in each parity).
inline SuperPolynomial lift_to(const SuperPolynomial& f, const ContextPtr& ctx) {
    SuperPolynomial out(ctx);
    for (const auto& [m, c] : f.terms()) {
        Monomial n;
        n.exps.assign(ctx->num_even(), 0);
        std::copy(m.exps.begin(), m.exps.end(), n.exps.begin());
        n.odd = m.odd;
        out.add_term(n, c);
    }
    return out;
}

}  // namespace oracle
