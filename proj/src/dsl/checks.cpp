#include "internal.hpp"

#include "superkernel/functors.hpp"

namespace superkernel::dsl {

namespace {

using Values = std::vector<Value>;
using Result = std::optional<std::string>;

Scalar small(Rng& rng, int bound = 2) { return Scalar(static_cast<long>(rng.uniform(-bound, bound))); }

/// A morphism Y -> Y whose reduced map is the identity: even coordinates
/// get nilpotent corrections, odd ones are mixed linearly.
SuperMorphism random_endomorphism(const SuperDomain& y, Rng& rng) {
    const auto& ctx = y.coordinates();
    std::size_t p = y.p(), q = y.q();
    auto even = [&](std::size_t k) { return SuperPolynomial::even_generator(ctx, k); };
    auto odd = [&](std::size_t k) { return SuperPolynomial::odd_generator(ctx, k); };
    auto factor = [&]() {
        auto f = SuperPolynomial::constant(ctx, small(rng));
        if (p && rng.coin()) f += even(static_cast<std::size_t>(rng.uniform(0, static_cast<long>(p) - 1))) * small(rng);
        return f;
    };
    std::vector<Superfunction> comps;
    for (std::size_t a = 0; a < p; ++a) {
        auto f = even(a);
        for (std::size_t i = 0; i < q; ++i)
            for (std::size_t j = i + 1; j < q; ++j)
                if (rng.coin(40)) f += factor() * odd(i) * odd(j);
        comps.push_back(Superfunction::from_polynomial(y, f));
    }
    for (std::size_t i = 0; i < q; ++i) {
        auto f = odd(i);
        for (std::size_t j = 0; j < q; ++j)
            if (rng.coin(40)) f += factor() * odd(j);
        if (q >= 3 && rng.coin(30)) f += small(rng) * odd(0) * odd(1) * odd(2);
        comps.push_back(Superfunction::from_polynomial(y, f));
    }
    return SuperMorphism::make(y, y, std::move(comps));
}

AlgebraElement random_element(const WeilPtr& a, Rng& rng, std::optional<Parity> parity, bool in_ideal) {
    std::vector<Scalar> c(a->dim());
    for (std::size_t i = in_ideal ? 1 : 0; i < a->dim(); ++i)
        if ((!parity || a->basis_parity(i) == *parity) && rng.coin(60)) c[i] = small(rng, 3);
    return AlgebraElement(a, std::move(c));
}

/// An even unital endomorphism of A; the identity when random images keep
/// violating the relations.
AlgebraMorphism random_algebra_endomorphism(const WeilPtr& a, Rng& rng) {
    const auto& ctx = *a->context();
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<AlgebraElement> images;
        for (std::size_t k = 0; k < a->num_generators(); ++k)
            images.push_back(random_element(a, rng, k < ctx.num_even() ? Parity::Even : Parity::Odd, true));
        try {
            return AlgebraMorphism::make(a, a, std::move(images));
        } catch (const NotAMorphismError&) {
        }
    }
    return AlgebraMorphism::identity(a);
}

WeilPtr random_small_algebra(Rng& rng, Field field) {
    for (;;) {
        WeilPtr a = rng.coin(30) ? grassmann(static_cast<int>(rng.uniform(0, 3)), field)
                                 : multijet(static_cast<int>(rng.uniform(0, 2)), static_cast<int>(rng.uniform(0, 2)),
                                            static_cast<int>(rng.uniform(1, 3)), field);
        if (a->dim() <= 8) return a;
    }
}

std::string describe(const WeilPtr& a) { return render_weil_body(*a); }

Result weil_laws(Env&, const Values& args, const Values& with, Rng& rng) {
    const auto& psi = args[0].as_morphism();
    const auto& a = with[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(with.size()) - 1))].as_algebra();
    const auto& x = psi.source();
    const auto& y = psi.target();
    std::string where = " for A = " + describe(a);

    auto tpsi = apply_morphism(a, psi);
    auto bx = apply_object(a, x);
    auto by = apply_object(a, y);
    if (apply_morphism(a, SuperMorphism::identity(x)) != SuperMorphism::identity(bx.total))
        return "T^A(id) is not the identity" + where;
    if (compose(bx.projection, bx.section) != SuperMorphism::identity(x))
        return "projection o section is not the identity" + where;

    auto g = random_endomorphism(y, rng);
    if (apply_morphism(a, compose(g, psi)) != compose(apply_morphism(a, g), tpsi))
        return "T^A(g o psi) differs from T^A g o T^A psi for g = " + g.to_string() + where;

    if (compose(by.projection, tpsi) != compose(psi, bx.projection))
        return "the projection is not natural" + where;
    if (compose(tpsi, bx.section) != compose(by.section, psi)) return "the zero section is not natural" + where;

    auto phi = random_algebra_endomorphism(a, rng);
    if (compose(nat_transform(phi, y), tpsi) != compose(tpsi, nat_transform(phi, x))) {
        std::string images;
        for (const auto& im : phi.images()) images += (images.empty() ? "" : ", ") + im.to_string();
        return "T^phi is not natural for phi = (" + images + ")" + where;
    }

    auto report = derivation_check(psi, rng, 4);
    if (!report.ok()) return "derivation check: " + report.failures.front();
    return std::nullopt;
}

SuperPolynomial partial(const SuperPolynomial& f, std::size_t b) {
    SuperPolynomial out(f.context());
    for (const auto& [m, c] : f.terms()) {
        if (m.exps[b] == 0) continue;
        Monomial d = m;
        --d.exps[b];
        out.add_term(d, c * Scalar(static_cast<long>(m.exps[b])));
    }
    return out;
}

Result jacobian_check(Env&, const Values& args, const Values&, Rng&) {
    const auto& psi = args[0].as_morphism();
    auto j = tangent_jacobian(psi);
    for (std::size_t a = 0; a < j.size(); ++a)
        for (std::size_t b = 0; b < j[a].size(); ++b) {
            auto direct = partial(psi.component(a).part(0), b);
            if (direct != j[a][b])
                return "entry (" + std::to_string(a + 1) + ", " + std::to_string(b + 1) + "): tangent gives " +
                       j[a][b].to_string() + ", direct derivative gives " + direct.to_string();
        }
    return std::nullopt;
}

Result girth_additivity(Env& env, const Values& args, const Values&, Rng& rng) {
    WeilPtr a = args.empty() ? random_small_algebra(rng, env.options.field) : args[0].as_algebra();
    WeilPtr b = args.empty() ? random_small_algebra(rng, env.options.field) : args[1].as_algebra();
    auto ab = WeilAlgebra::tensor(a, b);
    if (ab->girth() != a->girth() + b->girth())
        return "girth(" + describe(a) + " (x) " + describe(b) + ") = " + std::to_string(ab->girth()) + ", expected " +
               std::to_string(a->girth()) + " + " + std::to_string(b->girth());
    return std::nullopt;
}

Result locality(Env&, const Values& args, const Values&, Rng& rng) {
    const auto& a = args[0].as_algebra();
    auto e = random_element(a, rng, std::nullopt, false);
    auto eps = e.augmentation();
    auto n = e - a->scalar(eps);
    auto power = a->one();
    for (int k = 0; k <= a->girth(); ++k) power = power * n;
    if (!power.is_zero()) return "the nilpotent part of " + e.to_string() + " is not nilpotent of order girth + 1";
    if (eps.is_zero()) {
        try {
            invert(e);
            return e.to_string() + " lies in the maximal ideal but was inverted";
        } catch (const NotInvertibleError&) {
            return std::nullopt;
        }
    }
    auto inv = invert(e);
    if (e * inv != a->one() || inv * e != a->one()) return "invert(" + e.to_string() + ") is not an inverse";
    return std::nullopt;
}

Result round_trip(Env& env, const Values& args, const Values& with, Rng& rng) {
    const auto& x = args[0].as_domain();
    const auto& y = args[1].as_domain();
    auto xy = product(x, y);

    for (const SuperDomain* d : std::initializer_list<const SuperDomain*>{&x, &y, &xy}) {
        std::string text;
        if (!d->has_trivial_coeff()) text += render_algebra("C", *d->coeff()) + "\n";
        text += render_domain("X", *d, "C") + "\n";
        Env fresh{env.options, {}};
        auto script = parse(text);
        for (const auto& st : script.statements) define(fresh, st);
        if (!canonically_isomorphic(fresh.names.at("X").as_domain(), *d))
            return "rendering does not parse back:\n" + text;
    }

    auto [p1, p2] = product_projections(x, y);
    if (pairing(p1, p2) != SuperMorphism::identity(xy)) return "<p1, p2> is not the identity of the product";

    if (with.empty()) return std::nullopt;
    const auto& a = with[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(with.size()) - 1))].as_algebra();
    auto iso = product_iso(a, x, y);
    if (compose(iso.backward, iso.forward) != SuperMorphism::identity(iso.forward.source()) ||
        compose(iso.forward, iso.backward) != SuperMorphism::identity(iso.backward.source()))
        return "T^A(X x Y) -> T^A X x T^A Y is not invertible for A = " + describe(a);
    return std::nullopt;
}

std::vector<SuiteSpec> build_suites() {
    return {
        {"weil-laws", {Param::Morphism}, Param::Algebra, 1, false, 10, weil_laws},
        {"jacobian", {Param::Morphism}, std::nullopt, 0, false, 1, jacobian_check},
        {"girth-additivity", {Param::Algebra, Param::Algebra}, std::nullopt, 0, true, 100, girth_additivity},
        {"locality", {Param::Algebra}, std::nullopt, 0, false, 50, locality},
        {"round-trip", {Param::Domain, Param::Domain}, Param::Algebra, 0, false, 3, round_trip},
    };
}

}  // namespace

const std::vector<SuiteSpec>& suite_table() {
    static const std::vector<SuiteSpec> table = build_suites();
    return table;
}

const SuiteSpec* find_suite(const std::string& name) {
    for (const auto& s : suite_table())
        if (name == s.name) return &s;
    return nullptr;
}

}  // namespace superkernel::dsl
