#pragma once

#include "superkernel/polynomial.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace superkernel {

/// Generators, a truncation order N (every monomial of total degree > N is
/// zero) and homogeneous relations without constant term.
struct WeilPresentation {
    ContextPtr ctx;
    int truncate = 0;
    std::vector<SuperPolynomial> relations;

    static WeilPresentation make(std::vector<std::string> even, std::vector<std::string> odd, int truncate,
                                 const std::vector<std::string>& relations = {}, Field field = Field::Real);
};

class WeilAlgebra;
using WeilPtr = std::shared_ptr<const WeilAlgebra>;

/// Coefficient vector over the basis of a Weil algebra.
class AlgebraElement {
public:
    explicit AlgebraElement(WeilPtr algebra);
    AlgebraElement(WeilPtr algebra, std::vector<Scalar> coefficients);

    const WeilPtr& algebra() const noexcept { return alg_; }
    const std::vector<Scalar>& coefficients() const noexcept { return c_; }
    const Scalar& operator[](std::size_t i) const { return c_[i]; }

    bool is_zero() const;
    /// Parity when homogeneous; zero counts as even.
    std::optional<Parity> parity() const;
    bool has_parity(Parity p) const;
    Scalar augmentation() const { return c_[0]; }

    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    AlgebraElement& operator*=(const Scalar& s);
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator*(AlgebraElement a, const Scalar& s) { return a *= s; }
    friend AlgebraElement operator*(const Scalar& s, AlgebraElement a) { return a *= s; }
    friend AlgebraElement operator-(AlgebraElement a) { return a *= Scalar(-1); }
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

    /// Polynomial in the presentation's generators, one term per basis element.
    SuperPolynomial to_polynomial() const;
    std::string to_string() const;

private:
    WeilPtr alg_;
    std::vector<Scalar> c_;
};

/// a = eps(a) * 1 + n with n in the maximal ideal.
struct Augmentation {
    Scalar scalar;
    AlgebraElement nilpotent;
};
Augmentation augment(const AlgebraElement& a);

/// Inverse by the finite geometric series; NotInvertibleError when eps(a) = 0.
AlgebraElement invert(const AlgebraElement& a);

/// Finite dimensional local superalgebra A = k + m with a monomial basis
/// (1 first, then canonical polynomial order) and tabulated products.
class WeilAlgebra : public std::enable_shared_from_this<WeilAlgebra> {
public:
    struct Term {
        std::size_t index;
        Scalar coefficient;
    };

    /// Row reduces the span of relation multiples inside the truncated
    /// polynomial algebra; the standard monomials form the basis.
    static WeilPtr build(const WeilPresentation& p);
    /// The ground field as a Weil algebra (no generators).
    static WeilPtr ground(Field field = Field::Real);
    /// Graded tensor product; basis elements are the products a_i b_j ordered
    /// by their combined monomial.  Colliding generator names of the right
    /// factor get a numeric suffix.
    static WeilPtr tensor(const WeilPtr& a, const WeilPtr& b);

    const WeilPresentation& presentation() const noexcept { return pres_; }
    const ContextPtr& context() const noexcept { return pres_.ctx; }
    Field field() const noexcept { return pres_.ctx->field(); }

    std::size_t dim() const noexcept { return basis_.size(); }
    std::size_t dim_even() const noexcept;
    std::size_t dim_odd() const noexcept { return dim() - dim_even(); }
    /// "even|odd".
    std::string graded_dim() const;

    const std::vector<Monomial>& basis() const noexcept { return basis_; }
    Parity basis_parity(std::size_t i) const { return basis_[i].parity(); }
    std::string basis_name(std::size_t i) const { return render_monomial(*pres_.ctx, basis_[i]); }
    /// e_i * e_j over the basis.
    const std::vector<Term>& product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }

    /// Minimal h with m^{h+1} = 0.
    int girth() const noexcept { return girth_; }

    AlgebraElement zero() const;
    AlgebraElement one() const;
    AlgebraElement scalar(const Scalar& s) const;
    AlgebraElement basis_element(std::size_t i) const;
    /// Image of the k-th generator (even generators first, then odd).
    AlgebraElement generator(std::size_t k) const;
    std::size_t num_generators() const noexcept { return generators_.size(); }
    AlgebraElement generator(const std::string& name) const;
    /// Class of a polynomial in the presentation's generators.
    AlgebraElement element(const SuperPolynomial& f) const;
    AlgebraElement parse(const std::string& text) const;

    /// Left and right factors when this algebra was made by tensor().
    struct TensorFactors {
        WeilPtr left;
        WeilPtr right;
        /// pairs[k] = (i, j) means basis element k is a_i (x) b_j.
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        std::vector<std::size_t> index;  // index[i * dim(right) + j]
        std::size_t at(std::size_t i, std::size_t j) const { return index[i * right->dim() + j]; }
    };
    const std::optional<TensorFactors>& factors() const noexcept { return factors_; }

    /// Same presentation context, basis and structure constants.
    bool same_structure(const WeilAlgebra& o) const;

    WeilAlgebra(WeilPresentation pres, std::vector<Monomial> basis, std::vector<std::vector<Term>> table);

private:
    void finish(std::vector<std::vector<Scalar>> generator_images);

    WeilPresentation pres_;
    std::vector<Monomial> basis_;
    std::vector<std::vector<Term>> table_;
    std::vector<std::vector<Scalar>> generators_;
    int girth_ = 0;
    std::optional<TensorFactors> factors_;

    struct Reducer;
    std::shared_ptr<const Reducer> reducer_;
};

/// Unital even morphism A -> B given by the images of A's generators.
class AlgebraMorphism {
public:
    /// Checks parities, locality and that every relation (and every monomial
    /// beyond the truncation order) maps to zero.
    static AlgebraMorphism make(WeilPtr source, WeilPtr target, std::vector<AlgebraElement> images);
    static AlgebraMorphism identity(const WeilPtr& a);
    /// eps: A -> k.
    static AlgebraMorphism augmentation(const WeilPtr& a);
    /// eta: k -> A.
    static AlgebraMorphism unit(const WeilPtr& a);

    const WeilPtr& source() const noexcept { return source_; }
    const WeilPtr& target() const noexcept { return target_; }
    const std::vector<AlgebraElement>& images() const noexcept { return images_; }
    /// Image of source basis element i.
    const AlgebraElement& basis_image(std::size_t i) const { return basis_images_[i]; }

    AlgebraElement operator()(const AlgebraElement& a) const;
    friend bool operator==(const AlgebraMorphism& a, const AlgebraMorphism& b);

private:
    AlgebraMorphism(WeilPtr s, WeilPtr t, std::vector<AlgebraElement> images, std::vector<AlgebraElement> basis_images)
        : source_(std::move(s)), target_(std::move(t)), images_(std::move(images)),
          basis_images_(std::move(basis_images)) {}

    WeilPtr source_;
    WeilPtr target_;
    std::vector<AlgebraElement> images_;
    std::vector<AlgebraElement> basis_images_;
};

/// psi o phi.
AlgebraMorphism compose(const AlgebraMorphism& psi, const AlgebraMorphism& phi);

/// The inclusions a -> a (x) 1 and b -> 1 (x) b of a tensor product.
AlgebraMorphism tensor_inclusion_left(const WeilPtr& ab);
AlgebraMorphism tensor_inclusion_right(const WeilPtr& ab);
/// The symmetry A (x) B -> B (x) A.
AlgebraMorphism tensor_flip(const WeilPtr& ab, const WeilPtr& ba);

WeilPtr multijet(int p, int q, int m, Field field = Field::Real);
WeilPtr grassmann(int n, Field field = Field::Real);
/// k[e]/(e^2).
WeilPtr dual_numbers(Field field = Field::Real);
/// The super dual numbers, multijet(1, 1, 1).
WeilPtr super_dual_numbers(Field field = Field::Real);

struct DerivedAlgebra {
    WeilPtr algebra;
    /// Projection A -> F(A) for reduction and body, inclusion F(A) -> A for
    /// the even part.
    AlgebraMorphism canonical;
};

DerivedAlgebra reduction(const WeilPtr& a);
DerivedAlgebra body(const WeilPtr& a);
DerivedAlgebra even_part(const WeilPtr& a);
/// Same presentation over the Gaussian rationals.
WeilPtr complexify(const WeilPtr& a);

/// Every monomial in the context of total degree exactly d.
std::vector<Monomial> monomials_of_degree(const Context& ctx, int d);

}  // namespace superkernel
