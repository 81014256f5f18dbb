#pragma once

#include "superkernel/morphism.hpp"

#include <string>
#include <utility>
#include <vector>

namespace superkernel {

/// T^A X for a domain X over S = Spec C (C the coefficient algebra of X).
/// Coordinates of the total space are x_a^b for every coordinate x_a of X
/// (even ones first) and every basis element e^b of A, with e^0 = 1 giving
/// the base coordinates themselves.  The fibre coordinates are named
/// "<x_a>_<e^b>" and ordered b-major, then a, inside each parity.
struct WeilBundle {
    SuperDomain base;
    WeilPtr algebra;
    SuperDomain total;
    SuperMorphism projection;  // T^eps : T^A X -> X
    SuperMorphism section;     // T^eta : X -> T^A X
    /// slot[a][b] is the position of x_a^b among the total's coordinates
    /// (even ones first).
    std::vector<std::vector<std::size_t>> slot;

    std::size_t fibre_even() const { return total.p() - base.p(); }
    std::size_t fibre_odd() const { return total.q() - base.q(); }
    /// "even|odd" of the fibre.
    std::string fibre_dim() const;
    const std::string& coordinate_name(std::size_t a, std::size_t b) const;
    /// The generic A-point of X over the total space, x_a + sum_b x_a^b (x) e^b,
    /// as a morphism from the total thickened by A.
    const SuperMorphism& generic() const { return generic_; }

    SuperMorphism generic_;
};

/// Fails with CsRepresentabilityError for a complex domain unless the fibre
/// dimension pr+qs | ps+qr is purely odd.  A real algebra is complexified
/// over a complex domain.
WeilBundle apply_object(const WeilPtr& a, const SuperDomain& x);

/// Coefficients of f(x_a + sum_b x_a^b e^b) along the basis of A, as
/// functions on the total space.
std::vector<Superfunction> prolong(const WeilBundle& bundle, const Superfunction& f);

/// T^A psi.
SuperMorphism apply_morphism(const WeilPtr& a, const SuperMorphism& psi);

struct NatTransData {
    AlgebraMorphism phi;
    /// matrix[b' - 1][b - 1]: coefficient of e'^{b'} in phi(e^b).
    std::vector<std::vector<Scalar>> matrix;
};
NatTransData nat_data(const AlgebraMorphism& phi);

/// T^phi_X : T^A X -> T^B X for phi: A -> B.
SuperMorphism nat_transform(const AlgebraMorphism& phi, const SuperDomain& x);

struct BundleIso {
    SuperMorphism forward;
    SuperMorphism backward;
};

/// T^{A (x) B} X -> T^A(T^B X) by x_a^{(i, j)} <-> (x_a^j)^i, and back.
BundleIso compose_iso(const WeilPtr& a, const WeilPtr& b, const SuperDomain& x);

/// T^A(X x Y) -> T^A X x T^A Y, and back.
BundleIso product_iso(const WeilPtr& a, const SuperDomain& x, const SuperDomain& y);

/// Coefficients pushed along r: C -> C'.  The domain of f must have
/// coefficient algebra C; the result lives on the same coordinates over C'.
Superfunction change_coefficients(const Superfunction& f, const AlgebraMorphism& r);
/// R x_S X for R = Spec C' -> S = Spec C.
SuperDomain base_change(const AlgebraMorphism& r, const SuperDomain& x);
/// Base change of a morphism over S (its coefficient images must be the
/// identity of C).
SuperMorphism base_change(const AlgebraMorphism& r, const SuperMorphism& psi);

struct BaseChange {
    SuperDomain pulled;  // R x_S T^A X
    WeilBundle bundle;   // T^A_R(R x_S X)
    BundleIso iso;
};
BaseChange base_change(const AlgebraMorphism& r, const WeilBundle& bundle);

/// T X = T^D X for the dual numbers D.
WeilBundle tangent(const SuperDomain& x);

/// For generated f, g on the target: delta(fg) = psi^#f delta(g) + delta(f) psi^#g,
/// where delta is the fibre part of the tangent prolongation along psi, and
/// delta(f) agrees with (T psi)^# of the fibre part of f.
CompatReport derivation_check(const SuperMorphism& psi, Rng& rng, std::size_t functions = 8);

}  // namespace superkernel
