#pragma once

#include "superkernel/polynomial.hpp"
#include "superkernel/weil.hpp"

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace superkernel {

/// Interval of the rational line; a missing endpoint is infinite (and open).
struct Interval {
    std::optional<mpq_class> lo, hi;
    bool lo_closed = false, hi_closed = false;

    static Interval line() { return {}; }
    static Interval open(const mpq_class& a, const mpq_class& b) { return {a, b, false, false}; }
    static Interval closed(const mpq_class& a, const mpq_class& b) { return {a, b, true, true}; }
    static Interval point(const mpq_class& a) { return closed(a, a); }

    bool empty() const;
    bool contains(const mpq_class& x) const;
    bool contains(const Interval& o) const;
    Interval intersect(const Interval& o) const;
    /// A rational interior point (or the point itself for degenerate intervals).
    mpq_class sample() const;
    std::string to_string() const;

    friend bool operator==(const Interval&, const Interval&) = default;
};

using Box = std::vector<Interval>;

bool box_contains(const Box& outer, const Box& inner);
bool box_contains(const Box& box, std::span<const mpq_class> point);
std::string box_to_string(const Box& box);

using Point = std::vector<mpq_class>;

/// t1..tp and th1..thq.
ContextPtr standard_coordinates(std::size_t p, std::size_t q, Field field = Field::Real);

/// An open box in A^{p|q}, optionally thickened by a coefficient Weil
/// algebra C (structure functions are polynomials with values in C).
class SuperDomain {
public:
    static SuperDomain affine(std::size_t p, std::size_t q, Field field = Field::Real);
    /// Empty box means the full space.
    SuperDomain(ContextPtr coordinates, Box box = {}, WeilPtr coeff = nullptr);

    const ContextPtr& coordinates() const noexcept { return d_->coords; }
    std::size_t p() const noexcept { return d_->coords->num_even(); }
    std::size_t q() const noexcept { return d_->coords->num_odd(); }
    Field field() const noexcept { return d_->coords->field(); }
    const Box& box() const noexcept { return d_->box; }
    const WeilPtr& coeff() const noexcept { return d_->coeff; }
    bool has_trivial_coeff() const noexcept { return d_->coeff->dim() == 1 && d_->coeff->num_generators() == 0; }
    /// Coordinates followed by the coefficient algebra's generators (even
    /// names first, then odd names); used for text input and output.
    const ContextPtr& combined_context() const noexcept { return d_->combined; }
    std::string dim_string() const { return std::to_string(p()) + "|" + std::to_string(q()); }
    std::string to_string() const;

    SuperDomain with_box(Box box) const { return SuperDomain(d_->coords, std::move(box), d_->coeff); }
    SuperDomain with_coeff(WeilPtr coeff) const { return SuperDomain(d_->coords, d_->box, std::move(coeff)); }

    friend bool operator==(const SuperDomain& a, const SuperDomain& b);

private:
    struct Data {
        ContextPtr coords;
        Box box;
        WeilPtr coeff;
        ContextPtr combined;
    };
    std::shared_ptr<const Data> d_;
};

/// Element of O(U) (x) C: one polynomial in the coordinates per basis
/// element of the coefficient algebra C, f = sum_b f_b (x) c_b.
class Superfunction {
public:
    explicit Superfunction(SuperDomain domain);
    Superfunction(SuperDomain domain, std::vector<SuperPolynomial> parts);

    static Superfunction constant(const SuperDomain& x, const Scalar& c);
    static Superfunction coordinate(const SuperDomain& x, const std::string& name);
    static Superfunction even_coordinate(const SuperDomain& x, std::size_t k);
    static Superfunction odd_coordinate(const SuperDomain& x, std::size_t k);
    /// f (x) 1 for f in the coordinate context.
    static Superfunction from_polynomial(const SuperDomain& x, const SuperPolynomial& f);
    /// 1 (x) a.
    static Superfunction from_coefficient(const SuperDomain& x, const AlgebraElement& a);
    /// Reads a polynomial over the combined context (coordinates and
    /// coefficient generators) and reduces it in C.
    static Superfunction from_combined(const SuperDomain& x, const SuperPolynomial& f);
    static Superfunction parse(const SuperDomain& x, const std::string& text);

    const SuperDomain& domain() const noexcept { return dom_; }
    const std::vector<SuperPolynomial>& parts() const noexcept { return parts_; }
    const SuperPolynomial& part(std::size_t b) const { return parts_[b]; }

    bool is_zero() const;
    std::optional<Parity> parity() const;
    bool has_parity(Parity p) const;
    /// The reduced part (theta = 0, C -> k) has coefficients in the real subfield.
    bool is_k_valued() const;

    Superfunction& operator+=(const Superfunction& o);
    Superfunction& operator-=(const Superfunction& o);
    Superfunction& operator*=(const Scalar& s);
    friend Superfunction operator+(Superfunction a, const Superfunction& b) { return a += b; }
    friend Superfunction operator-(Superfunction a, const Superfunction& b) { return a -= b; }
    friend Superfunction operator*(const Superfunction& a, const Superfunction& b);
    friend Superfunction operator*(Superfunction a, const Scalar& s) { return a *= s; }
    friend Superfunction operator*(const Scalar& s, Superfunction a) { return a *= s; }
    friend Superfunction operator-(Superfunction a) { return a *= Scalar(-1); }
    friend bool operator==(const Superfunction& a, const Superfunction& b);
    Superfunction pow(unsigned k) const;

    /// Same data viewed on another domain with identical coordinates and
    /// coefficient algebra (used after restriction).
    Superfunction on(const SuperDomain& other) const;

    /// The polynomial in the combined context.
    SuperPolynomial to_polynomial() const;
    std::string to_string() const;

private:
    SuperDomain dom_;
    std::vector<SuperPolynomial> parts_;
};

/// Value in the residue field: kills theta and m_C, then evaluates.
Scalar value_at(const Superfunction& f, std::span<const mpq_class> x);
/// The part surviving theta = 0 and C -> k, as a function on the same domain.
Superfunction reduce(const Superfunction& f);
Superfunction nilpotent_part(const Superfunction& f);
/// The reduced polynomial in the even coordinates (theta = 0, C -> k).
SuperPolynomial reduced_polynomial(const Superfunction& f);

/// Coefficient algebra becomes C (x) A (A itself when C is the ground field).
SuperDomain weil_thicken(const SuperDomain& x, const WeilPtr& a);
/// A^{p+r|q+s} on the product box; coefficient algebras are tensored.
/// Standard coordinate names are renumbered, other colliding names get a
/// suffix.
SuperDomain product(const SuperDomain& x, const SuperDomain& y);
SuperDomain restrict(const SuperDomain& x, const Box& box);

}  // namespace superkernel
