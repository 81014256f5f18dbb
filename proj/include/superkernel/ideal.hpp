#pragma once

#include "superkernel/module_groebner.hpp"
#include "superkernel/polynomial.hpp"

#include <optional>
#include <span>
#include <vector>

namespace superkernel {

/// Ideal of K[t | theta] given by homogeneous generators.  Membership is
/// decided in the free K[t]-module with basis theta^I, I ranging over odd
/// sets, where the ideal is the submodule spanned by g * theta^J.
class IdealBasis {
public:
    IdealBasis(ContextPtr ctx, std::vector<SuperPolynomial> generators,
               std::optional<int> degree_cap = std::nullopt);

    struct NormalForm {
        SuperPolynomial value;
        /// Set when the verdict comes from the degree-capped span.
        bool bounded = false;
    };

    NormalForm reduce(const SuperPolynomial& f) const;
    SuperPolynomial normal_form(const SuperPolynomial& f) const { return reduce(f).value; }
    bool contains(const SuperPolynomial& f) const { return reduce(f).value.is_zero(); }
    /// Every generator of other reduces to zero here.
    bool contains(const IdealBasis& other) const;

    const ContextPtr& context() const noexcept { return ctx_; }
    const std::vector<SuperPolynomial>& generators() const noexcept { return generators_; }
    std::optional<int> degree_cap() const noexcept { return module_.degree_cap(); }

private:
    ContextPtr ctx_;
    std::vector<SuperPolynomial> generators_;
    SubmoduleBasis module_;
};

SuperPolynomial normal_form(const SuperPolynomial& f, const IdealBasis& ideal);

/// Generators of the k-th power: products over all k-element multisets.
std::vector<SuperPolynomial> ideal_power(std::span<const SuperPolynomial> generators, unsigned k);

/// The unique P of degree <= N in (t - x) with f - P in m_x^{N+1}, expanded
/// in t.  f must be free of odd generators.
SuperPolynomial taylor_truncate(const SuperPolynomial& f, std::span<const Scalar> x, int order);

/// The same jet written in the shifted variables s = t - x (the context's
/// even generators stand for s).
SuperPolynomial taylor_coefficients(const SuperPolynomial& f, std::span<const Scalar> x, int order);

/// Generators t_k - x_k of the maximal ideal at x.
std::vector<SuperPolynomial> maximal_ideal_at(const ContextPtr& ctx, std::span<const Scalar> x);

/// Certifies f - p in m_x^{N+1} by a normal form computation.
bool taylor_remainder_certified(const SuperPolynomial& f, const SuperPolynomial& p,
                                std::span<const Scalar> x, int order);

}  // namespace superkernel
