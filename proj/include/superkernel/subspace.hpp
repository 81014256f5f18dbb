#pragma once

#include "superkernel/ideal.hpp"
#include "superkernel/superdomain.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace superkernel {

/// Closed subspace of a domain cut out by homogeneous superfunctions.  The
/// ideal lives in the combined context, together with the relations of the
/// coefficient algebra, so membership is decided by one normal form.
class FinSuperspace {
public:
    explicit FinSuperspace(SuperDomain ambient, std::vector<Superfunction> generators = {},
                           std::optional<int> degree_cap = std::nullopt);

    const SuperDomain& ambient() const noexcept { return d_->ambient; }
    const std::vector<Superfunction>& generators() const noexcept { return d_->generators; }
    /// Union of boxes containing the zero locus of the reduced generators
    /// (an over-approximation; empty when the locus is certified empty).
    const std::vector<Box>& support() const noexcept { return d_->support; }
    std::optional<int> degree_cap() const noexcept { return d_->ideal->degree_cap(); }

    struct Reduction {
        Superfunction value;
        bool bounded = false;
    };
    Reduction reduce(const Superfunction& f) const;
    Superfunction normal_form(const Superfunction& f) const { return reduce(f).value; }
    bool contains(const Superfunction& f) const;
    bool equivalent(const Superfunction& f, const Superfunction& g) const { return contains(f - g); }
    /// Membership of a polynomial in the ambient's combined context.
    bool contains_polynomial(const SuperPolynomial& f) const;
    /// Every generator of o lies in this ideal (ambients must agree).
    bool contains(const FinSuperspace& o) const;
    bool same_ideal(const FinSuperspace& o) const { return contains(o) && o.contains(*this); }
    /// True when every generator is zero, so the subspace is the ambient.
    bool is_ambient() const;

    std::string to_string() const;

private:
    struct Data {
        SuperDomain ambient;
        std::vector<Superfunction> generators;
        std::vector<Box> support;
        std::shared_ptr<const IdealBasis> ideal;
    };
    std::shared_ptr<const Data> d_;
};

/// Polynomial relations of a coefficient algebra, written in the combined
/// context of x: its presentation relations and the monomials just beyond
/// its truncation order.
std::vector<SuperPolynomial> coefficient_relations(const SuperDomain& x);

/// Boxes inside box containing every common real zero of the given
/// odd-free polynomials.  Univariate constraints are solved by root
/// isolation, the rest are used to discard boxes by interval evaluation.
std::vector<Box> narrow_support(const Box& box, const std::vector<SuperPolynomial>& constraints);

}  // namespace superkernel
