#include "superkernel/functors.hpp"

#include "superkernel/errors.hpp"
#include "superkernel/linalg.hpp"

#include <map>

namespace superkernel {

namespace {

ContextPtr even_coordinates(const SuperDomain& x) {
    return Context::make(x.coordinates()->even_names(), {}, x.field());
}

SuperDomain reduced_domain(const SuperDomain& x) { return SuperDomain(even_coordinates(x), x.box()); }

SuperDomain body_domain(const SuperDomain& x) {
    return SuperDomain(even_coordinates(x), x.box(), x.has_trivial_coeff() ? nullptr : body(x.coeff()).algebra);
}

/// Data for the even part of X: L = Lambda(theta) (x) C, E = L_ev and a
/// solver for the inclusion E -> L.
struct EvenPart {
    SuperDomain source;
    WeilPtr L;
    std::optional<DerivedAlgebra> even;  // empty when L is the ground field
    SuperDomain domain;
    using Key = std::pair<int, std::size_t>;
    RowEchelon<Key> solver;

    explicit EvenPart(const SuperDomain& x) : source(x), domain(x) {
        WeilPtr lambda;
        if (x.q() > 0) {
            WeilPresentation pres;
            pres.ctx = Context::make({}, x.coordinates()->odd_names(), x.field());
            pres.truncate = static_cast<int>(x.q());
            lambda = WeilAlgebra::build(pres);
        }
        if (lambda && !x.has_trivial_coeff()) L = WeilAlgebra::tensor(lambda, x.coeff());
        else L = lambda ? lambda : x.coeff();
        WeilPtr E;
        if (L->num_generators() > 0) {
            even = superkernel::even_part(L);
            E = even->algebra;
            for (std::size_t i = 0; i < E->dim(); ++i) {
                RowEchelon<Key>::Vector v;
                const auto& img = even->canonical.basis_image(i);
                for (std::size_t j = 0; j < L->dim(); ++j)
                    if (!img[j].is_zero()) v.emplace(Key{0, j}, img[j]);
                v.emplace(Key{1, i}, Scalar(1));
                solver.insert(std::move(v));
            }
        }
        domain = SuperDomain(even_coordinates(x), x.box(), E);
    }

    /// Coordinates over E of an even element of L.
    std::vector<Scalar> preimage(const AlgebraElement& w) const {
        std::size_t n = domain.coeff()->dim();
        std::vector<Scalar> out(n);
        if (!even) {
            out[0] = w[0];
            return out;
        }
        RowEchelon<Key>::Vector v;
        for (std::size_t j = 0; j < L->dim(); ++j)
            if (!w[j].is_zero()) v.emplace(Key{0, j}, w[j]);
        auto r = solver.reduce(std::move(v));
        for (const auto& [k, c] : r) {
            if (k.first == 0) throw ParityError("even_part: " + w.to_string() + " is not even");
            out[k.second] = -c;
        }
        return out;
    }

    /// The element of L carried by the non-coordinate part of a combined monomial.
    AlgebraElement l_element(const Monomial& m) const {
        Monomial lm;
        lm.exps.assign(m.exps.begin() + static_cast<std::ptrdiff_t>(source.p()), m.exps.end());
        lm.odd = m.odd;
        return L->element(SuperPolynomial::monomial(L->context(), lm));
    }

    Superfunction lift(const Superfunction& f) const {
        if (!(f.domain() == source)) throw ContextError("even_part: function on a different domain");
        if (!f.has_parity(Parity::Even)) throw ParityError("even_part: " + f.to_string() + " is not even");
        std::vector<SuperPolynomial> parts(domain.coeff()->dim(), SuperPolynomial(domain.coordinates()));
        std::map<Monomial, std::vector<Scalar>, CanonicalOrder> cache;
        SuperPolynomial poly = f.to_polynomial();
        for (const auto& [m, c] : poly.terms()) {
            Monomial key;
            key.exps.assign(m.exps.begin() + static_cast<std::ptrdiff_t>(source.p()), m.exps.end());
            key.odd = m.odd;
            auto it = cache.find(key);
            if (it == cache.end()) it = cache.emplace(key, preimage(l_element(m))).first;
            Monomial t;
            t.exps.assign(m.exps.begin(), m.exps.begin() + static_cast<std::ptrdiff_t>(source.p()));
            for (std::size_t i = 0; i < it->second.size(); ++i)
                if (!it->second[i].is_zero()) parts[i].add_term(t, c * it->second[i]);
        }
        return Superfunction(domain, std::move(parts));
    }

    /// An element of L as a function on the source.
    Superfunction as_function(const AlgebraElement& a) const {
        const auto& ctx = source.combined_context();
        SuperPolynomial f(ctx);
        SuperPolynomial poly = a.to_polynomial();
        for (const auto& [m, c] : poly.terms()) {
            Monomial n;
            n.exps.assign(source.p(), 0);
            n.exps.insert(n.exps.end(), m.exps.begin(), m.exps.end());
            n.odd = m.odd;
            f.add_term(n, c);
        }
        return Superfunction::from_combined(source, f);
    }

    /// Images of E's generators in O(X).
    std::vector<Superfunction> generator_images() const {
        std::vector<Superfunction> out;
        if (!even) return out;
        for (std::size_t k = 0; k < domain.coeff()->num_generators(); ++k)
            out.push_back(as_function(even->canonical(domain.coeff()->generator(k))));
        return out;
    }

    /// Functions theta^I c_b running over a basis of L.
    std::vector<Superfunction> l_basis() const {
        std::vector<Superfunction> out;
        for (std::size_t i = 0; i < L->dim(); ++i) out.push_back(as_function(L->basis_element(i)));
        return out;
    }
};

SuperPolynomial drop_odd(const SuperPolynomial& f, const ContextPtr& to) {
    SuperPolynomial out(to);
    for (const auto& [m, c] : f.terms())
        if (m.odd == 0) out.add_term(Monomial{m.exps, 0}, c);
    return out;
}

std::vector<Superfunction> even_components(const SuperMorphism& m) {
    return {m.components().begin(), m.components().begin() + static_cast<std::ptrdiff_t>(m.target().p())};
}

SuperMorphism make_on(const std::optional<FinSuperspace>& space, const SuperDomain& source, const SuperDomain& target,
                      std::vector<Superfunction> comps, std::vector<Superfunction> imgs) {
    if (space) return SuperMorphism::make(*space, target, std::move(comps), std::move(imgs));
    return SuperMorphism::make(source, target, std::move(comps), std::move(imgs));
}

}  // namespace

Superfunction reduction_of(const Superfunction& f) {
    SuperDomain r = reduced_domain(f.domain());
    return Superfunction::from_polynomial(r, drop_odd(reduced_polynomial(f), r.coordinates()));
}

Superfunction body_of(const Superfunction& f) {
    SuperDomain b = body_domain(f.domain());
    return Superfunction::from_combined(b, drop_odd(f.to_polynomial(), b.combined_context()));
}

Superfunction even_part_of(const Superfunction& f) { return EvenPart(f.domain()).lift(f); }

DerivedDomain reduction(const SuperDomain& x) {
    SuperDomain r = reduced_domain(x);
    std::vector<Superfunction> comps;
    for (std::size_t k = 0; k < x.p(); ++k) comps.push_back(Superfunction::even_coordinate(r, k));
    for (std::size_t k = 0; k < x.q(); ++k) comps.emplace_back(r);
    std::vector<Superfunction> imgs(x.coeff()->num_generators(), Superfunction(r));
    return {r, SuperMorphism::make(r, x, std::move(comps), std::move(imgs))};
}

DerivedDomain body(const SuperDomain& x) {
    SuperDomain b = body_domain(x);
    std::vector<Superfunction> comps;
    for (std::size_t k = 0; k < x.p(); ++k) comps.push_back(Superfunction::even_coordinate(b, k));
    for (std::size_t k = 0; k < x.q(); ++k) comps.emplace_back(b);
    std::vector<Superfunction> imgs;
    if (!x.has_trivial_coeff()) {
        auto proj = superkernel::body(x.coeff()).canonical;
        for (std::size_t k = 0; k < x.coeff()->num_generators(); ++k)
            imgs.push_back(Superfunction::from_coefficient(b, proj(x.coeff()->generator(k))));
    }
    return {b, SuperMorphism::make(b, x, std::move(comps), std::move(imgs))};
}

DerivedDomain even_part(const SuperDomain& x) {
    EvenPart ep(x);
    std::vector<Superfunction> comps;
    for (std::size_t k = 0; k < x.p(); ++k) comps.push_back(Superfunction::even_coordinate(x, k));
    return {ep.domain, SuperMorphism::make(x, ep.domain, std::move(comps), ep.generator_images())};
}

FinSuperspace reduction(const FinSuperspace& y) {
    std::vector<Superfunction> gens;
    for (const auto& g : y.generators())
        if (g.has_parity(Parity::Even)) gens.push_back(reduction_of(g));
    return FinSuperspace(reduced_domain(y.ambient()), std::move(gens), y.degree_cap());
}

FinSuperspace body(const FinSuperspace& y) {
    std::vector<Superfunction> gens;
    for (const auto& g : y.generators()) gens.push_back(body_of(g));
    return FinSuperspace(body_domain(y.ambient()), std::move(gens), y.degree_cap());
}

FinSuperspace even_part(const FinSuperspace& y) {
    EvenPart ep(y.ambient());
    std::vector<Superfunction> gens;
    auto basis = ep.l_basis();
    for (const auto& g : y.generators())
        for (const auto& mu : basis) {
            Superfunction h = g * mu;
            if (!h.is_zero() && h.has_parity(Parity::Even)) gens.push_back(ep.lift(h));
        }
    return FinSuperspace(ep.domain, std::move(gens), y.degree_cap());
}

SuperMorphism reduction(const SuperMorphism& m) {
    SuperDomain src = reduced_domain(m.source()), tgt = reduced_domain(m.target());
    std::optional<FinSuperspace> space;
    if (m.source_space()) space = reduction(*m.source_space());
    std::vector<Superfunction> comps;
    for (const auto& f : even_components(m)) comps.push_back(reduction_of(f));
    return make_on(space, src, tgt, std::move(comps), {});
}

SuperMorphism body(const SuperMorphism& m) {
    SuperDomain src = body_domain(m.source()), tgt = body_domain(m.target());
    std::optional<FinSuperspace> space;
    if (m.source_space()) space = body(*m.source_space());
    std::vector<Superfunction> comps, imgs;
    for (const auto& f : even_components(m)) comps.push_back(body_of(f));
    std::size_t ce = m.target().coeff()->context()->num_even();
    for (std::size_t k = 0; k < ce; ++k) imgs.push_back(body_of(m.coeff_images()[k]));
    return make_on(space, src, tgt, std::move(comps), std::move(imgs));
}

SuperMorphism even_part(const SuperMorphism& m) {
    EvenPart es(m.source()), et(m.target());
    std::optional<FinSuperspace> space;
    if (m.source_space()) space = even_part(*m.source_space());
    std::vector<Superfunction> comps, imgs;
    for (const auto& f : even_components(m)) comps.push_back(es.lift(f));
    for (const auto& g : et.generator_images()) imgs.push_back(es.lift(m.pullback(g)));
    return make_on(space, es.domain, et.domain, std::move(comps), std::move(imgs));
}

bool canonically_isomorphic(const WeilPtr& a, const WeilPtr& b) {
    if (a->field() != b->field() || a->dim() != b->dim()) return false;
    const auto& ca = *a->context();
    const auto& cb = *b->context();
    if (ca.even_names() != cb.even_names() || ca.odd_names() != cb.odd_names()) return false;
    try {
        std::vector<AlgebraElement> ab, ba;
        for (std::size_t k = 0; k < a->num_generators(); ++k) {
            ab.push_back(b->generator(k));
            ba.push_back(a->generator(k));
        }
        AlgebraMorphism::make(a, b, ab);
        AlgebraMorphism::make(b, a, ba);
        return true;
    } catch (const NotAMorphismError&) {
        return false;
    }
}

bool canonically_isomorphic(const SuperDomain& x, const SuperDomain& y) {
    return x.coordinates()->same_as(*y.coordinates()) && x.box() == y.box() &&
           canonically_isomorphic(x.coeff(), y.coeff());
}

bool canonically_isomorphic(const FinSuperspace& x, const FinSuperspace& y) {
    if (!canonically_isomorphic(x.ambient(), y.ambient())) return false;
    const auto& cy = y.ambient().combined_context();
    const auto& cx = x.ambient().combined_context();
    for (const auto& g : x.generators())
        if (!y.contains_polynomial(g.to_polynomial().rebased(cy))) return false;
    for (const auto& g : y.generators())
        if (!x.contains_polynomial(g.to_polynomial().rebased(cx))) return false;
    return true;
}

}  // namespace superkernel
