#pragma once

#include "superkernel/morphism.hpp"

namespace superkernel {

struct DerivedDomain {
    SuperDomain domain;
    /// X_0 -> X and X_ev -> X (closed embeddings); X -> X^ev for the even part.
    SuperMorphism canonical;
};

/// A^{p|0} on the same box, no coefficients.
DerivedDomain reduction(const SuperDomain& x);
/// Odd coordinates dropped, coefficient algebra replaced by its body.
DerivedDomain body(const SuperDomain& x);
/// Even coordinates, coefficients in the even part of Lambda(theta) (x) C.
DerivedDomain even_part(const SuperDomain& x);

/// The function on X_0 (resp. X_ev) induced by f.
Superfunction reduction_of(const Superfunction& f);
Superfunction body_of(const Superfunction& f);
/// An even f read as a function on X^ev.  ParityError for odd input.
Superfunction even_part_of(const Superfunction& f);

/// The reduction is taken up to radical: it is cut out by the reduced
/// generators.
FinSuperspace reduction(const FinSuperspace& y);
FinSuperspace body(const FinSuperspace& y);
FinSuperspace even_part(const FinSuperspace& y);

SuperMorphism reduction(const SuperMorphism& m);
SuperMorphism body(const SuperMorphism& m);
SuperMorphism even_part(const SuperMorphism& m);

/// Both algebras have the same generator names and the name-preserving
/// assignment is an isomorphism.
bool canonically_isomorphic(const WeilPtr& a, const WeilPtr& b);
/// Same coordinates and box, canonically isomorphic coefficients.
bool canonically_isomorphic(const SuperDomain& x, const SuperDomain& y);
/// Isomorphic ambients and the same ideal in the combined context.
bool canonically_isomorphic(const FinSuperspace& x, const FinSuperspace& y);

}  // namespace superkernel
