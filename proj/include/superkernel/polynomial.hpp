#pragma once

#include "superkernel/scalar.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace superkernel {

enum class Parity { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
    return static_cast<Parity>((static_cast<int>(a) + static_cast<int>(b)) & 1);
}
inline int koszul(Parity a, Parity b) {
    return (a == Parity::Odd && b == Parity::Odd) ? -1 : 1;
}
const char* to_string(Parity p) noexcept;

/// Bit k set means the odd generator with index k is present.
using OddSet = std::uint64_t;
inline constexpr int kMaxOddGenerators = 64;

/// t^alpha * theta^I with I stored as a bit set (so no index repeats).
struct Monomial {
    std::vector<std::uint16_t> exps;
    OddSet odd = 0;

    int even_degree() const;
    int odd_degree() const { return __builtin_popcountll(odd); }
    int degree() const { return even_degree() + odd_degree(); }
    Parity parity() const { return (odd_degree() & 1) ? Parity::Odd : Parity::Even; }
    bool is_one() const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Sign of theta^I * theta^J after sorting, or 0 if I and J intersect.
int odd_product_sign(OddSet a, OddSet b);

/// Graded lex comparison: total degree first, then the exponent vector
/// (even exponents, then odd indicator bits) lexicographically with t1 > t2
/// and th1 > th2.  Returns <0, 0, >0.
int graded_lex_compare(const Monomial& a, const Monomial& b);

/// Canonical term order of stored polynomials: ascending total degree and,
/// inside one degree, lex-descending.  This is the rendering order.
struct CanonicalOrder {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Descending graded lex: the leading (largest) monomial sorts first.
struct LeadingFirst {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return graded_lex_compare(a, b) > 0;
    }
};

/// An ordered list of even and odd generators over a field.
class Context {
public:
    Context(std::vector<std::string> even, std::vector<std::string> odd, Field field);

    static std::shared_ptr<const Context> make(std::vector<std::string> even,
                                               std::vector<std::string> odd,
                                               Field field = Field::Real);

    std::size_t num_even() const noexcept { return even_.size(); }
    std::size_t num_odd() const noexcept { return odd_.size(); }
    const std::vector<std::string>& even_names() const noexcept { return even_; }
    const std::vector<std::string>& odd_names() const noexcept { return odd_; }
    Field field() const noexcept { return field_; }

    struct Lookup {
        Parity parity;
        std::size_t index;
    };
    std::optional<Lookup> find(const std::string& name) const;

    bool same_as(const Context& o) const {
        return this == &o || (even_ == o.even_ && odd_ == o.odd_ && field_ == o.field_);
    }

private:
    std::vector<std::string> even_;
    std::vector<std::string> odd_;
    Field field_;
};

using ContextPtr = std::shared_ptr<const Context>;

void require_same_context(const ContextPtr& a, const ContextPtr& b, const char* where);

/// Element of the free supercommutative algebra K[t | theta] in canonical
/// form: odd indices sorted, sign absorbed, no zero coefficients.
class SuperPolynomial {
public:
    using TermMap = std::map<Monomial, Scalar, CanonicalOrder>;

    explicit SuperPolynomial(ContextPtr ctx) : ctx_(std::move(ctx)) {}

    static SuperPolynomial constant(ContextPtr ctx, const Scalar& c);
    static SuperPolynomial even_generator(ContextPtr ctx, std::size_t index);
    static SuperPolynomial odd_generator(ContextPtr ctx, std::size_t index);
    static SuperPolynomial generator(ContextPtr ctx, const std::string& name);
    static SuperPolynomial monomial(ContextPtr ctx, Monomial m, const Scalar& c = Scalar(1));

    const ContextPtr& context() const noexcept { return ctx_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    /// Coefficient of m (zero if absent).
    Scalar coefficient(const Monomial& m) const;
    /// Coefficient of the constant monomial.
    Scalar constant_term() const;

    int degree() const;  // -1 for zero
    /// Parity of a homogeneous polynomial; nullopt when mixed.  Zero is even.
    std::optional<Parity> parity() const;
    /// True when every term has parity p (vacuously for zero).
    bool has_parity(Parity p) const;
    bool is_k_valued() const;
    bool involves_odd() const;

    void add_term(const Monomial& m, const Scalar& c);

    SuperPolynomial& operator+=(const SuperPolynomial& o);
    SuperPolynomial& operator-=(const SuperPolynomial& o);
    SuperPolynomial& operator*=(const Scalar& s);
    friend SuperPolynomial operator+(SuperPolynomial a, const SuperPolynomial& b) { return a += b; }
    friend SuperPolynomial operator-(SuperPolynomial a, const SuperPolynomial& b) { return a -= b; }
    friend SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b);
    friend SuperPolynomial operator*(SuperPolynomial a, const Scalar& s) { return a *= s; }
    friend SuperPolynomial operator*(const Scalar& s, SuperPolynomial a) { return a *= s; }
    friend SuperPolynomial operator-(SuperPolynomial a) { return a *= Scalar(-1); }
    SuperPolynomial pow(unsigned k) const;

    friend bool operator==(const SuperPolynomial& a, const SuperPolynomial& b);

    /// Part of parity p.
    SuperPolynomial part(Parity p) const;
    /// Terms of total degree <= n.
    SuperPolynomial truncated(int n) const;
    /// The same terms viewed in another context with identical generator
    /// counts (used for renaming).
    SuperPolynomial rebased(ContextPtr other) const;

    /// f = sum_I f_I theta^I with f_I free of odd generators.
    std::map<OddSet, SuperPolynomial> grassmann_expand() const;
    static SuperPolynomial reassemble(ContextPtr ctx, const std::map<OddSet, SuperPolynomial>& parts);

    /// Value at a point of the even generators after killing every odd
    /// generator.
    Scalar evaluate_reduced(std::span<const Scalar> point) const;

    std::string to_string() const;

private:
    ContextPtr ctx_;
    TermMap terms_;
};

/// Renders a monomial with the context's generator names ("1" for the unit).
std::string render_monomial(const Context& ctx, const Monomial& m);

/// Substitutes ring elements for generators: even_images[k] for t_k and
/// odd_images[k] for theta_k.  Ring needs +, *, and Scalar * Ring.
template <class Ring>
Ring substitute(const SuperPolynomial& f, std::span<const Ring> even_images,
                std::span<const Ring> odd_images, const Ring& zero, const Ring& one) {
    std::vector<std::vector<Ring>> powers(even_images.size());
    auto power = [&](std::size_t k, unsigned e) -> const Ring& {
        auto& cache = powers[k];
        if (cache.empty()) cache.push_back(one);
        while (cache.size() <= e) cache.push_back(cache.back() * even_images[k]);
        return cache[e];
    };
    Ring result = zero;
    for (const auto& [m, c] : f.terms()) {
        Ring term = one;
        bool first = true;
        for (std::size_t k = 0; k < m.exps.size(); ++k) {
            if (m.exps[k] == 0) continue;
            term = first ? power(k, m.exps[k]) : term * power(k, m.exps[k]);
            first = false;
        }
        for (OddSet rest = m.odd; rest; rest &= rest - 1) {
            auto k = static_cast<std::size_t>(__builtin_ctzll(rest));
            term = first ? odd_images[k] : term * odd_images[k];
            first = false;
        }
        result = result + c * term;
    }
    return result;
}

}  // namespace superkernel
