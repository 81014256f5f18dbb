#include "superkernel/superdomain.hpp"

#include "superkernel/errors.hpp"
#include "superkernel/parse.hpp"

#include <set>

namespace superkernel {

// ---------------------------------------------------------------------------
// intervals and boxes

bool Interval::empty() const {
    if (!lo || !hi) return false;
    if (*lo > *hi) return true;
    return *lo == *hi && !(lo_closed && hi_closed);
}

bool Interval::contains(const mpq_class& x) const {
    if (lo && (x < *lo || (x == *lo && !lo_closed))) return false;
    if (hi && (x > *hi || (x == *hi && !hi_closed))) return false;
    return true;
}

bool Interval::contains(const Interval& o) const {
    if (o.empty()) return true;
    if (lo) {
        if (!o.lo || *o.lo < *lo) return false;
        if (*o.lo == *lo && o.lo_closed && !lo_closed) return false;
    }
    if (hi) {
        if (!o.hi || *o.hi > *hi) return false;
        if (*o.hi == *hi && o.hi_closed && !hi_closed) return false;
    }
    return true;
}

Interval Interval::intersect(const Interval& o) const {
    Interval r = *this;
    if (o.lo) {
        if (!r.lo || *o.lo > *r.lo) {
            r.lo = o.lo;
            r.lo_closed = o.lo_closed;
        } else if (*o.lo == *r.lo) {
            r.lo_closed = r.lo_closed && o.lo_closed;
        }
    }
    if (o.hi) {
        if (!r.hi || *o.hi < *r.hi) {
            r.hi = o.hi;
            r.hi_closed = o.hi_closed;
        } else if (*o.hi == *r.hi) {
            r.hi_closed = r.hi_closed && o.hi_closed;
        }
    }
    return r;
}

mpq_class Interval::sample() const {
    if (lo && hi) return mpq_class((*lo + *hi) / 2);
    if (lo) return mpq_class(*lo + 1);
    if (hi) return mpq_class(*hi - 1);
    return mpq_class(0);
}

std::string Interval::to_string() const {
    std::string s = lo ? (lo_closed ? "[" : "(") + lo->get_str() : "(-inf";
    s += ", ";
    s += hi ? hi->get_str() + (hi_closed ? "]" : ")") : "inf)";
    return s;
}

bool box_contains(const Box& outer, const Box& inner) {
    if (outer.size() != inner.size()) return false;
    for (std::size_t k = 0; k < outer.size(); ++k)
        if (!outer[k].contains(inner[k])) return false;
    return true;
}

bool box_contains(const Box& box, std::span<const mpq_class> point) {
    if (box.size() != point.size()) return false;
    for (std::size_t k = 0; k < box.size(); ++k)
        if (!box[k].contains(point[k])) return false;
    return true;
}

std::string box_to_string(const Box& box) {
    std::string s;
    for (std::size_t k = 0; k < box.size(); ++k) {
        if (k) s += " x ";
        s += box[k].to_string();
    }
    return s;
}

// ---------------------------------------------------------------------------
// domains

ContextPtr standard_coordinates(std::size_t p, std::size_t q, Field field) {
    std::vector<std::string> even, odd;
    for (std::size_t k = 1; k <= p; ++k) even.push_back("t" + std::to_string(k));
    for (std::size_t k = 1; k <= q; ++k) odd.push_back("th" + std::to_string(k));
    return Context::make(std::move(even), std::move(odd), field);
}

SuperDomain SuperDomain::affine(std::size_t p, std::size_t q, Field field) {
    return SuperDomain(standard_coordinates(p, q, field));
}

SuperDomain::SuperDomain(ContextPtr coordinates, Box box, WeilPtr coeff) {
    auto d = std::make_shared<Data>();
    d->coords = std::move(coordinates);
    if (box.empty()) box.assign(d->coords->num_even(), Interval::line());
    if (box.size() != d->coords->num_even())
        throw DomainError("box has " + std::to_string(box.size()) + " intervals for " +
                          std::to_string(d->coords->num_even()) + " even coordinates");
    for (const auto& iv : box)
        if (iv.empty()) throw DomainError("empty interval " + iv.to_string());
    d->box = std::move(box);
    d->coeff = coeff ? std::move(coeff) : WeilAlgebra::ground(d->coords->field());
    if (d->coeff->field() != d->coords->field())
        throw FieldError("coefficient algebra and domain are over different fields");

    const auto& cc = *d->coeff->context();
    std::set<std::string> names(d->coords->even_names().begin(), d->coords->even_names().end());
    names.insert(d->coords->odd_names().begin(), d->coords->odd_names().end());
    for (const auto* list : {&cc.even_names(), &cc.odd_names()})
        for (const auto& n : *list)
            if (!names.insert(n).second)
                throw ContextError("coefficient generator " + n + " clashes with a coordinate name");
    std::vector<std::string> even = d->coords->even_names(), odd = d->coords->odd_names();
    even.insert(even.end(), cc.even_names().begin(), cc.even_names().end());
    odd.insert(odd.end(), cc.odd_names().begin(), cc.odd_names().end());
    d->combined = Context::make(std::move(even), std::move(odd), d->coords->field());
    d_ = std::move(d);
}

std::string SuperDomain::to_string() const {
    std::string s = "A^{" + dim_string() + "}";
    bool bounded = false;
    for (const auto& iv : box())
        if (iv.lo || iv.hi) bounded = true;
    if (bounded) s += " on " + box_to_string(box());
    if (!has_trivial_coeff()) s += " coeff " + coeff()->graded_dim();
    return s;
}

bool operator==(const SuperDomain& a, const SuperDomain& b) {
    if (a.d_ == b.d_) return true;
    return a.coordinates()->same_as(*b.coordinates()) && a.box() == b.box() &&
           a.coeff()->same_structure(*b.coeff());
}

// ---------------------------------------------------------------------------
// superfunctions

namespace {

void require_same_domain(const SuperDomain& a, const SuperDomain& b, const char* where) {
    if (!(a == b)) throw ContextError(std::string(where) + ": superfunctions live on different domains");
}

}  // namespace

Superfunction::Superfunction(SuperDomain domain) : dom_(std::move(domain)) {
    parts_.assign(dom_.coeff()->dim(), SuperPolynomial(dom_.coordinates()));
}

Superfunction::Superfunction(SuperDomain domain, std::vector<SuperPolynomial> parts)
    : dom_(std::move(domain)), parts_(std::move(parts)) {
    if (parts_.size() != dom_.coeff()->dim()) throw ContextError("superfunction has the wrong number of parts");
    for (const auto& f : parts_) require_same_context(dom_.coordinates(), f.context(), "superfunction");
}

Superfunction Superfunction::constant(const SuperDomain& x, const Scalar& c) {
    Superfunction f(x);
    f.parts_[0] = SuperPolynomial::constant(x.coordinates(), c);
    return f;
}

Superfunction Superfunction::coordinate(const SuperDomain& x, const std::string& name) {
    return from_polynomial(x, SuperPolynomial::generator(x.coordinates(), name));
}

Superfunction Superfunction::even_coordinate(const SuperDomain& x, std::size_t k) {
    return from_polynomial(x, SuperPolynomial::even_generator(x.coordinates(), k));
}

Superfunction Superfunction::odd_coordinate(const SuperDomain& x, std::size_t k) {
    return from_polynomial(x, SuperPolynomial::odd_generator(x.coordinates(), k));
}

Superfunction Superfunction::from_polynomial(const SuperDomain& x, const SuperPolynomial& f) {
    require_same_context(x.coordinates(), f.context(), "from_polynomial");
    Superfunction r(x);
    r.parts_[0] = f;
    return r;
}

Superfunction Superfunction::from_coefficient(const SuperDomain& x, const AlgebraElement& a) {
    if (!a.algebra()->same_structure(*x.coeff())) throw ContextError("element of a different coefficient algebra");
    Superfunction r(x);
    for (std::size_t b = 0; b < a.coefficients().size(); ++b)
        if (!a[b].is_zero()) r.parts_[b] = SuperPolynomial::constant(x.coordinates(), a[b]);
    return r;
}

Superfunction Superfunction::from_combined(const SuperDomain& x, const SuperPolynomial& f) {
    require_same_context(x.combined_context(), f.context(), "superfunction");
    const auto& C = x.coeff();
    std::size_t p = x.p(), q = x.q();
    std::map<Monomial, AlgebraElement, CanonicalOrder> cache;
    Superfunction r(x);
    for (const auto& [m, c] : f.terms()) {
        Monomial coord, cm;
        coord.exps.assign(m.exps.begin(), m.exps.begin() + static_cast<std::ptrdiff_t>(p));
        coord.odd = q == 64 ? m.odd : (m.odd & ((OddSet{1} << q) - 1));
        cm.exps.assign(m.exps.begin() + static_cast<std::ptrdiff_t>(p), m.exps.end());
        cm.odd = q == 64 ? 0 : m.odd >> q;
        auto it = cache.find(cm);
        if (it == cache.end()) it = cache.emplace(cm, C->element(SuperPolynomial::monomial(C->context(), cm))).first;
        for (std::size_t b = 0; b < C->dim(); ++b)
            if (!it->second[b].is_zero()) r.parts_[b].add_term(coord, c * it->second[b]);
    }
    return r;
}

Superfunction Superfunction::parse(const SuperDomain& x, const std::string& text) {
    return from_combined(x, parse_polynomial(x.combined_context(), text));
}

bool Superfunction::is_zero() const {
    for (const auto& f : parts_)
        if (!f.is_zero()) return false;
    return true;
}

bool Superfunction::has_parity(Parity p) const {
    for (std::size_t b = 0; b < parts_.size(); ++b)
        if (!parts_[b].has_parity(p + dom_.coeff()->basis_parity(b))) return false;
    return true;
}

std::optional<Parity> Superfunction::parity() const {
    if (has_parity(Parity::Even)) return Parity::Even;
    if (has_parity(Parity::Odd)) return Parity::Odd;
    return std::nullopt;
}

bool Superfunction::is_k_valued() const { return reduced_polynomial(*this).is_k_valued(); }

Superfunction& Superfunction::operator+=(const Superfunction& o) {
    require_same_domain(dom_, o.dom_, "+");
    for (std::size_t b = 0; b < parts_.size(); ++b) parts_[b] += o.parts_[b];
    return *this;
}

Superfunction& Superfunction::operator-=(const Superfunction& o) {
    require_same_domain(dom_, o.dom_, "-");
    for (std::size_t b = 0; b < parts_.size(); ++b) parts_[b] -= o.parts_[b];
    return *this;
}

Superfunction& Superfunction::operator*=(const Scalar& s) {
    for (auto& f : parts_) f *= s;
    return *this;
}

Superfunction operator*(const Superfunction& f, const Superfunction& g) {
    require_same_domain(f.dom_, g.dom_, "*");
    const auto& C = *f.dom_.coeff();
    Superfunction r(f.dom_);
    for (std::size_t a = 0; a < f.parts_.size(); ++a) {
        if (f.parts_[a].is_zero()) continue;
        bool odd_a = C.basis_parity(a) == Parity::Odd;
        for (std::size_t b = 0; b < g.parts_.size(); ++b) {
            if (g.parts_[b].is_zero()) continue;
            const auto& terms = C.product(a, b);
            if (terms.empty()) continue;
            // (f_a c_a)(g_b c_b) = (-1)^{|c_a||g_b|} f_a g_b c_a c_b
            SuperPolynomial gb = odd_a ? g.parts_[b].part(Parity::Even) - g.parts_[b].part(Parity::Odd) : g.parts_[b];
            SuperPolynomial prod = f.parts_[a] * gb;
            if (prod.is_zero()) continue;
            for (const auto& t : terms) r.parts_[t.index] += t.coefficient * prod;
        }
    }
    return r;
}

bool operator==(const Superfunction& a, const Superfunction& b) {
    return a.dom_ == b.dom_ && a.parts_ == b.parts_;
}

Superfunction Superfunction::pow(unsigned k) const {
    Superfunction r = constant(dom_, Scalar(1));
    Superfunction base = *this;
    while (k) {
        if (k & 1) r = r * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return r;
}

Superfunction Superfunction::on(const SuperDomain& other) const {
    if (!other.coordinates()->same_as(*dom_.coordinates()) || !other.coeff()->same_structure(*dom_.coeff()))
        throw ContextError("superfunction cannot be moved to a domain with different coordinates");
    return Superfunction(other, parts_);
}

SuperPolynomial Superfunction::to_polynomial() const {
    const auto& ctx = dom_.combined_context();
    const auto& C = *dom_.coeff();
    std::size_t q = dom_.q();
    SuperPolynomial out(ctx);
    for (std::size_t b = 0; b < parts_.size(); ++b) {
        const Monomial& cb = C.basis()[b];
        for (const auto& [m, c] : parts_[b].terms()) {
            Monomial n;
            n.exps = m.exps;
            n.exps.insert(n.exps.end(), cb.exps.begin(), cb.exps.end());
            n.odd = m.odd | (cb.odd << q);
            out.add_term(n, c);
        }
    }
    return out;
}

std::string Superfunction::to_string() const { return to_polynomial().to_string(); }

SuperPolynomial reduced_polynomial(const Superfunction& f) {
    SuperPolynomial r(f.domain().coordinates());
    for (const auto& [m, c] : f.part(0).terms())
        if (m.odd == 0) r.add_term(m, c);
    return r;
}

Scalar value_at(const Superfunction& f, std::span<const mpq_class> x) {
    if (!box_contains(f.domain().box(), x)) throw DomainError("point outside the domain box");
    std::vector<Scalar> pt;
    for (const auto& v : x) pt.emplace_back(v);
    return reduced_polynomial(f).evaluate_reduced(pt);
}

Superfunction reduce(const Superfunction& f) { return Superfunction::from_polynomial(f.domain(), reduced_polynomial(f)); }

Superfunction nilpotent_part(const Superfunction& f) { return f - reduce(f); }

// ---------------------------------------------------------------------------
// constructions on domains

SuperDomain weil_thicken(const SuperDomain& x, const WeilPtr& a) {
    if (a->field() != x.field()) throw FieldError("weil_thicken: algebra and domain over different fields");
    if (a->dim() == 1 && a->num_generators() == 0) return x;
    if (x.has_trivial_coeff()) return x.with_coeff(a);
    return x.with_coeff(WeilAlgebra::tensor(x.coeff(), a));
}

SuperDomain product(const SuperDomain& x, const SuperDomain& y) {
    if (x.field() != y.field()) throw FieldError("product of domains over different fields");
    ContextPtr coords;
    auto is_standard = [](const SuperDomain& d) {
        return d.coordinates()->same_as(*standard_coordinates(d.p(), d.q(), d.field()));
    };
    if (is_standard(x) && is_standard(y)) {
        coords = standard_coordinates(x.p() + y.p(), x.q() + y.q(), x.field());
    } else {
        const auto& cx = *x.coordinates();
        const auto& cy = *y.coordinates();
        std::set<std::string> taken(cx.even_names().begin(), cx.even_names().end());
        taken.insert(cx.odd_names().begin(), cx.odd_names().end());
        auto rename = [&](const std::vector<std::string>& names) {
            std::vector<std::string> out;
            for (const auto& n : names) {
                std::string cand = n;
                for (int k = 2; taken.count(cand); ++k) cand = n + "_" + std::to_string(k);
                taken.insert(cand);
                out.push_back(cand);
            }
            return out;
        };
        auto even = cx.even_names(), odd = cx.odd_names();
        auto ye = rename(cy.even_names()), yo = rename(cy.odd_names());
        even.insert(even.end(), ye.begin(), ye.end());
        odd.insert(odd.end(), yo.begin(), yo.end());
        coords = Context::make(even, odd, x.field());
    }
    Box box = x.box();
    box.insert(box.end(), y.box().begin(), y.box().end());
    WeilPtr coeff = x.has_trivial_coeff()   ? y.coeff()
                    : y.has_trivial_coeff() ? x.coeff()
                                            : WeilAlgebra::tensor(x.coeff(), y.coeff());
    return SuperDomain(coords, box, coeff);
}

SuperDomain restrict(const SuperDomain& x, const Box& box) {
    if (box.size() != x.p()) throw DomainError("restriction box has the wrong number of intervals");
    for (const auto& iv : box)
        if (iv.empty()) throw DomainError("empty interval " + iv.to_string());
    if (!box_contains(x.box(), box))
        throw DomainError("box " + box_to_string(box) + " is not inside " + box_to_string(x.box()));
    return x.with_box(box);
}

}  // namespace superkernel
