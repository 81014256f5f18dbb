#pragma once

#include "superkernel/morphism.hpp"

#include <optional>
#include <string>
#include <vector>

namespace superkernel {

enum class EmbeddingKind { Open, Closed, General };
const char* to_string(EmbeddingKind k) noexcept;

/// An embedding j: Y -> X together with its image, the closed subspace of X
/// cut out by the vanishing ideal.
struct EmbeddingData {
    SuperMorphism map;
    EmbeddingKind kind;
    FinSuperspace image;
    /// For closed embeddings of domains: the generators of Y's combined
    /// context written as functions on X (a left inverse of j^#).
    std::vector<Superfunction> inverse_even, inverse_odd;
};

/// The inclusion of a closed subspace into its ambient.
EmbeddingData subspace_embedding(const FinSuperspace& y);
/// Inclusion of a sub-box.
EmbeddingData open_embedding(const SuperDomain& x, const Box& box);
/// Classifies j: Y -> X.  It is closed when every generator of Y (coordinate
/// or coefficient generator) is c * j^#(x) + d for some generator x of X;
/// the vanishing ideal is then generated by x - j^#(x)(h(x)).
EmbeddingData classify_embedding(const SuperMorphism& j);

/// Ideal generated by the coordinate differences phi^#(y) - psi^#(y).
EmbeddingData equalizer(const SuperMorphism& phi, const SuperMorphism& psi);

struct FibreProduct {
    EmbeddingData embedding;  // inside X x Y
    SuperMorphism p1, p2;     // defined on the subspace
};
FibreProduct fibre_product(const SuperMorphism& phi, const SuperMorphism& psi);
/// phi^{-1}(z) as a subspace of the source of phi.
FibreProduct fibre(const SuperMorphism& phi, const Point& z);

/// The unique u with j o u = psi.  Its target is Y when j is a closed
/// embedding of domains, otherwise the ambient of the image (then u is
/// psi, certified to land in the subspace).  NoFactorizationError when an
/// ideal generator does not pull back to zero or a point maps outside.
SuperMorphism factor_through_embedding(const SuperMorphism& psi, const EmbeddingData& j);
/// The factorization of a cone (a, b) with phi a = psi b through a fibre product.
SuperMorphism factor_cone(const FibreProduct& fp, const SuperMorphism& a, const SuperMorphism& b);

/// The ideal to the power n + 1.
FinSuperspace infinitesimal_neighbourhood(const EmbeddingData& j, int n);

struct GirthResult {
    std::optional<int> girth;
    /// A generator with nonzero reduced part when the ideal is not nilpotent.
    std::optional<Superfunction> non_nilpotent;
};
/// Minimal q with I^{q+1} = 0.  BoundedVerdict beyond max_order.
GirthResult girth_of_embedding(const EmbeddingData& j, int max_order = 64);

/// When the ideal is generated by coordinates, the subspace is the domain
/// with those coordinates dropped.
struct Elimination {
    SuperDomain domain;
    SuperMorphism inclusion;   // domain -> ambient
    SuperMorphism projection;  // subspace -> domain
};
std::optional<Elimination> eliminate_coordinates(const FinSuperspace& y);

struct Tidied {
    FinSuperspace space;
    std::string certificate;
};
/// Identity on polynomial structure sheaves (their stalks are Noetherian).
Tidied tidy(const FinSuperspace& y);

/// The n-th neighbourhood of the diagonal of A^p and its identification
/// with A^p thickened by the multijet algebra of order n.
struct DiagonalNeighbourhood {
    EmbeddingData diagonal;
    FinSuperspace neighbourhood;
    SuperDomain model;   // A^p with coefficients in D_n^{p|0}
    SuperMorphism to_model;    // neighbourhood -> model: t = x, T = x - y
    SuperMorphism from_model;  // model -> ambient: x = t, y = t - T
    /// from_model lands in the neighbourhood and both composites are identities.
    bool verify() const;
};
DiagonalNeighbourhood diagonal_neighbourhood(std::size_t p, int n, Field field = Field::Real);

}  // namespace superkernel
