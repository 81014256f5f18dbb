#pragma once

#include "superkernel/rng.hpp"
#include "superkernel/subspace.hpp"
#include "superkernel/superdomain.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace superkernel {

enum class MappingVerdict { Verified, Unknown, Violated };
const char* to_string(MappingVerdict v) noexcept;

/// A morphism X -> Y written in coordinates: phi^#(y_a) for every target
/// coordinate (even ones first) and phi^#(c_k) for every generator of the
/// target's coefficient algebra.  The source may be a closed subspace of
/// X, in which case all data are taken modulo its ideal.
class SuperMorphism {
public:
    /// When coeff_images is omitted: no images for a trivial target
    /// coefficient algebra, the identity when source and target coefficient
    /// algebras agree, the left inclusion when the source's is C (x) A and the
    /// target's is C.
    static SuperMorphism make(const SuperDomain& source, const SuperDomain& target, std::vector<Superfunction> components,
                              std::optional<std::vector<Superfunction>> coeff_images = std::nullopt);
    static SuperMorphism make(const FinSuperspace& source, const SuperDomain& target,
                              std::vector<Superfunction> components,
                              std::optional<std::vector<Superfunction>> coeff_images = std::nullopt);
    static SuperMorphism identity(const SuperDomain& x);
    /// The identity of the ambient restricted to a closed subspace.
    static SuperMorphism inclusion(const FinSuperspace& y);

    /// The ambient domain of the source.
    const SuperDomain& source() const noexcept { return source_; }
    const std::optional<FinSuperspace>& source_space() const noexcept { return space_; }
    const SuperDomain& target() const noexcept { return target_; }
    const std::vector<Superfunction>& components() const noexcept { return components_; }
    const Superfunction& component(std::size_t a) const { return components_[a]; }
    const std::vector<Superfunction>& coeff_images() const noexcept { return coeff_images_; }
    MappingVerdict verdict() const noexcept { return verdict_; }

    /// phi^# g for g on the target.
    Superfunction pullback(const Superfunction& g) const;
    /// phi_0(x), the reduced map at a source point.
    Point map_point(std::span<const mpq_class> x) const;

    std::string to_string() const;
    friend bool operator==(const SuperMorphism& a, const SuperMorphism& b);

private:
    SuperMorphism(SuperDomain s, std::optional<FinSuperspace> space, SuperDomain t)
        : source_(std::move(s)), space_(std::move(space)), target_(std::move(t)) {}
    static SuperMorphism build(const SuperDomain& source, std::optional<FinSuperspace> space, const SuperDomain& target,
                               std::vector<Superfunction> components,
                               std::optional<std::vector<Superfunction>> coeff_images);

    SuperDomain source_;
    std::optional<FinSuperspace> space_;
    SuperDomain target_;
    std::vector<Superfunction> components_;
    std::vector<Superfunction> coeff_images_;
    MappingVerdict verdict_ = MappingVerdict::Unknown;
};

/// psi o phi.
SuperMorphism compose(const SuperMorphism& psi, const SuperMorphism& phi);

struct VerdictReport {
    MappingVerdict verdict;
    /// A source point mapped outside the target box (Violated only).
    std::optional<Point> witness;
};
/// Interval evaluation of the reduced even components over the source
/// boxes, followed by a search for a rational counterexample.
VerdictReport mapping_verdict(const std::vector<SuperPolynomial>& reduced_even, const std::vector<Box>& source_boxes,
                              const Box& target_box);

/// Deterministic rational sample points of a box.
std::vector<Point> sample_points(const Box& box, std::size_t limit = 256);

/// Substitutes superfunctions for the generators of a domain's combined
/// context (coordinates, then coefficient generators), even ones first.
Superfunction substitute_generators(const SuperPolynomial& f, const std::vector<Superfunction>& even,
                                    const std::vector<Superfunction>& odd, const SuperDomain& on);

/// The generators of the combined context as superfunctions on x.
std::vector<Superfunction> generator_functions(const SuperDomain& x, Parity p);

struct CompatReport {
    std::size_t checks = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};
/// Compares value_at(phi^# f, x) with value_at(f, phi_0(x)) on sample
/// points for generated f.
CompatReport value_compat_check(const SuperMorphism& phi, Rng& rng, std::size_t functions = 8);

/// Projections of product(x, y).
std::pair<SuperMorphism, SuperMorphism> product_projections(const SuperDomain& x, const SuperDomain& y);
/// <a, b>: W -> X x Y.
SuperMorphism pairing(const SuperMorphism& a, const SuperMorphism& b);

/// The canonical thickening j: X -> X^A and retraction r: X^A -> X.
SuperMorphism thickening_embedding(const SuperDomain& x, const WeilPtr& a);
SuperMorphism thickening_retraction(const SuperDomain& x, const WeilPtr& a);

/// phi: S^A -> X written as phi^#(x_a) = s_a^0 (x) 1 + sum_b s_a^b (x) e^b.
struct WeilDecomposition {
    WeilPtr algebra;
    /// phi^0 = (id (x) eps) o phi^#, a morphism S -> X.
    SuperMorphism base;
    /// table[a][b - 1] = s_a^b for the basis elements e^b of m, functions on S.
    std::vector<std::vector<Superfunction>> table;
};
/// The source's coefficient algebra is split as C (x) A when it was made by
/// tensoring with a, otherwise a is the whole coefficient algebra.
WeilDecomposition decompose_weil(const SuperMorphism& phi, const WeilPtr& a = nullptr);
SuperMorphism recompose_weil(const WeilDecomposition& d);

}  // namespace superkernel
