#include "doctest.h"

#include "superkernel/errors.hpp"
#include "superkernel/functors.hpp"
#include "superkernel/limits.hpp"
#include "support/morphism_gen.hpp"

using namespace superkernel;
using oracle::random_domain;
using oracle::random_function;
using oracle::random_morphism;

namespace {

Superfunction fn(const SuperDomain& x, const std::string& text) { return Superfunction::parse(x, text); }

std::string support_string(const FinSuperspace& y) {
    std::string s;
    for (const auto& b : y.support()) s += "{" + box_to_string(b) + "}";
    return s;
}

}  // namespace

TEST_CASE("subspace membership and support") {
    auto x = SuperDomain::affine(1, 1);
    FinSuperspace y(x, {fn(x, "t1^2 - 1")});
    CHECK(y.contains(fn(x, "t1^3 - t1")));
    CHECK_FALSE(y.contains(fn(x, "t1 - 1")));
    CHECK(y.normal_form(fn(x, "t1^2 + th1")) == fn(x, "1 + th1"));
    CHECK(support_string(y) == "{[-1, -1]}{[1, 1]}");
    CHECK(FinSuperspace(x, {fn(x, "t1^2 + 1")}).support().empty());
    CHECK_THROWS_AS(FinSuperspace(x, {fn(x, "t1 + th1")}), ParityError);
    FinSuperspace two(SuperDomain::affine(2, 0), {Superfunction::parse(SuperDomain::affine(2, 0), "t1^2 - 2")});
    REQUIRE(two.support().size() == 2);
    CHECK_FALSE(two.support()[0][0].lo_closed);
    CHECK(two.support()[0][1] == Interval::line());
}

TEST_CASE("coefficient relations enter the ideal") {
    auto x = weil_thicken(SuperDomain::affine(1, 0), dual_numbers());
    FinSuperspace y(x, {fn(x, "t1 - e")});
    // t1 = e forces t1^2 = e^2 = 0
    CHECK(y.contains(fn(x, "t1^2")));
    CHECK_FALSE(y.contains(fn(x, "t1")));
}

TEST_CASE("equalizer examples") {
    auto x = SuperDomain::affine(1, 0), y = SuperDomain(Context::make({"s"}, {}));
    auto phi = SuperMorphism::make(x, y, {fn(x, "t1")});
    auto psi = SuperMorphism::make(x, y, {fn(x, "-t1")});
    auto same = equalizer(phi, phi);
    CHECK(same.image.is_ambient());
    CHECK(same.map == SuperMorphism::identity(x));
    auto e = equalizer(phi, psi);
    CHECK(e.image.contains(fn(x, "t1")));
    CHECK(support_string(e.image) == "{[0, 0]}");
    auto elim = eliminate_coordinates(e.image);
    REQUIRE(elim);
    CHECK(elim->domain == SuperDomain::affine(0, 0));

    auto x11 = SuperDomain::affine(1, 1);
    auto flip = SuperMorphism::make(x11, x11, {fn(x11, "t1"), fn(x11, "-th1")});
    auto e2 = equalizer(SuperMorphism::identity(x11), flip);
    CHECK(e2.image.contains(fn(x11, "th1")));
    auto elim2 = eliminate_coordinates(e2.image);
    REQUIRE(elim2);
    CHECK(elim2->domain == SuperDomain::affine(1, 0));
    CHECK(compose(elim2->projection, elim2->inclusion) == SuperMorphism::identity(elim2->domain));
    CHECK(compose(elim2->inclusion, elim2->projection) == SuperMorphism::inclusion(e2.image));
    CHECK_FALSE(eliminate_coordinates(FinSuperspace(x, {fn(x, "t1^2")})));
}

TEST_CASE("equalizer universal property") {
    Rng rng(31);
    int checked = 0;
    for (int n = 0; n < 120; ++n) {
        // phi and psi differ by multiples of g = t1 - c and th1; rho kills both
        auto x = SuperDomain::affine(static_cast<std::size_t>(rng.uniform(1, 2)), static_cast<std::size_t>(rng.uniform(1, 2)));
        auto y = SuperDomain::affine(static_cast<std::size_t>(rng.uniform(0, 2)), static_cast<std::size_t>(rng.uniform(0, 2)));
        auto c = oracle::small_rational(rng);
        auto g_even = fn(x, "t1") - Superfunction::constant(x, c), g_odd = fn(x, "th1");
        auto phi = random_morphism(x, y, rng);
        std::vector<Superfunction> comps = phi.components();
        for (std::size_t a = 0; a < comps.size(); ++a) {
            Parity par = a < y.p() ? Parity::Even : Parity::Odd;
            comps[a] += g_even * random_function(x, rng, par, 1, 2) +
                        g_odd * random_function(x, rng, par + Parity::Odd, 1, 2);
        }
        auto psi = SuperMorphism::make(x, y, comps);
        auto w = random_domain(rng, Field::Real, false);
        std::vector<Superfunction> rc = oracle::random_components(w, x, rng);
        rc[0] = Superfunction::constant(w, c);
        rc[x.p()] = Superfunction(w);
        auto rho = SuperMorphism::make(w, x, rc);
        REQUIRE(compose(phi, rho) == compose(psi, rho));
        auto e = equalizer(phi, psi);
        auto u = factor_through_embedding(rho, e);
        auto u2 = factor_through_embedding(rho, e);
        CHECK(u == u2);
        CHECK(compose(e.map, u) == rho);
        ++checked;

        // a map that does not equalize cannot factor
        if (!(phi == psi)) {
            auto bad = SuperMorphism::identity(x);
            if (!(compose(phi, bad) == compose(psi, bad))) CHECK_THROWS_AS(factor_through_embedding(bad, e), NoFactorizationError);
        }
    }
    CHECK(checked >= 100);
}

TEST_CASE("fibre examples") {
    auto x = SuperDomain::affine(1, 0), z = SuperDomain(Context::make({"s"}, {}));
    auto sq = SuperMorphism::make(x, z, {fn(x, "t1^2")});
    auto f = fibre(sq, {mpq_class(1)});
    CHECK(f.embedding.image.ambient() == x);
    CHECK(f.embedding.image.contains(fn(x, "t1^2 - 1")));
    CHECK_FALSE(f.embedding.image.contains(fn(x, "t1 - 1")));
    CHECK(support_string(f.embedding.image) == "{[-1, -1]}{[1, 1]}");

    auto id = SuperMorphism::make(x, z, {fn(x, "t1")});
    auto f0 = fibre(id, {mpq_class(0)});
    CHECK(support_string(f0.embedding.image) == "{[0, 0]}");
    auto pt = eliminate_coordinates(f0.embedding.image);
    REQUIRE(pt);
    CHECK(pt->domain == SuperDomain::affine(0, 0));

    auto a = SuperDomain::affine(1, 1), b = SuperDomain::affine(0, 1), p = SuperDomain::affine(0, 0);
    auto fp = fibre_product(SuperMorphism::make(a, p, {}), SuperMorphism::make(b, p, {}));
    CHECK(fp.embedding.image.is_ambient());
    CHECK(fp.embedding.image.ambient() == SuperDomain::affine(1, 2));
}

TEST_CASE("fibre product universal property") {
    Rng rng(32);
    int checked = 0;
    for (int n = 0; n < 110; ++n) {
        auto x = random_domain(rng, Field::Real, false);
        auto y = random_domain(rng, Field::Real, false);
        auto z = random_domain(rng, Field::Real, false);
        auto w = random_domain(rng, Field::Real, false);
        auto phi = random_morphism(x, z, rng);
        auto r = random_morphism(y, x, rng);
        auto psi = compose(phi, r);
        auto cmap = random_morphism(w, y, rng);
        auto a = compose(r, cmap), b = cmap;
        auto fp = fibre_product(phi, psi);
        CHECK(compose(phi, fp.p1) == compose(psi, fp.p2));
        auto u = factor_cone(fp, a, b);
        CHECK(u == factor_cone(fp, a, b));
        CHECK(compose(fp.p1, u) == a);
        CHECK(compose(fp.p2, u) == b);
        ++checked;
    }
    CHECK(checked >= 100);
}

TEST_CASE("factorization through closed embeddings") {
    auto x = SuperDomain::affine(1, 1), y = SuperDomain::affine(1, 0);
    auto j = SuperMorphism::make(y, x, {fn(y, "t1"), Superfunction(y)});
    auto emb = classify_embedding(j);
    CHECK(emb.kind == EmbeddingKind::Closed);
    CHECK(emb.image.contains(fn(x, "th1")));
    CHECK(factor_through_embedding(j, emb) == SuperMorphism::identity(y));
    auto z = SuperDomain::affine(2, 0);
    auto psi = SuperMorphism::make(z, x, {fn(z, "t1*t2 + 3"), Superfunction(z)});
    auto u = factor_through_embedding(psi, emb);
    CHECK(u.component(0) == fn(z, "t1*t2 + 3"));
    CHECK(compose(j, u) == psi);
    auto psi_odd = SuperMorphism::make(SuperDomain::affine(1, 1), x, {fn(SuperDomain::affine(1, 1), "t1"), fn(SuperDomain::affine(1, 1), "th1")});
    CHECK_THROWS_AS(factor_through_embedding(psi_odd, emb), NoFactorizationError);

    auto zero = subspace_embedding(FinSuperspace(y, {fn(y, "t1")}));
    auto off = SuperDomain(standard_coordinates(1, 0), {Interval::open(1, 2)});
    auto away = SuperMorphism::make(off, y, {fn(off, "t1")});
    CHECK_THROWS_AS(factor_through_embedding(away, zero), NoFactorizationError);

    auto sub = open_embedding(y, {Interval::open(0, 5)});
    CHECK(sub.kind == EmbeddingKind::Open);
    CHECK(factor_through_embedding(away, sub).target() == sub.map.source());
    auto wide = SuperDomain(standard_coordinates(1, 0), {Interval::open(-1, 2)});
    CHECK_THROWS_AS(factor_through_embedding(SuperMorphism::make(wide, y, {fn(wide, "t1")}), sub), NoFactorizationError);
}

TEST_CASE("infinitesimal neighbourhoods") {
    auto x = SuperDomain::affine(0, 1);
    auto e = subspace_embedding(FinSuperspace(x, {fn(x, "th1")}));
    CHECK(infinitesimal_neighbourhood(e, 0).same_ideal(e.image));
    CHECK(infinitesimal_neighbourhood(e, 1).is_ambient());
    CHECK(infinitesimal_neighbourhood(e, 3).is_ambient());

    for (std::size_t p = 1; p <= 2; ++p)
        for (int n = 0; n <= 3; ++n) {
            auto d = diagonal_neighbourhood(p, n);
            CHECK(d.diagonal.kind == EmbeddingKind::Closed);
            CHECK(d.verify());
            auto amb = d.neighbourhood.ambient();
            auto diff = fn(amb, "t1") - Superfunction::even_coordinate(amb, p);
            CHECK(d.neighbourhood.contains(diff.pow(static_cast<unsigned>(n + 1))));
            CHECK_FALSE(d.neighbourhood.contains(diff.pow(static_cast<unsigned>(n))));
            CHECK(d.model.coeff()->dim() == (p == 1 ? static_cast<std::size_t>(n + 1)
                                                    : static_cast<std::size_t>((n + 1) * (n + 2) / 2)));
        }
}

TEST_CASE("girth of embeddings") {
    for (int n = 1; n <= 4; ++n) {
        auto pt = SuperDomain::affine(0, 0);
        auto j = thickening_embedding(pt, grassmann(n));
        auto e = classify_embedding(j);
        CHECK(e.kind == EmbeddingKind::Closed);
        CHECK(girth_of_embedding(e).girth == n);
    }
    CHECK(girth_of_embedding(classify_embedding(SuperMorphism::identity(SuperDomain::affine(1, 1)))).girth == 0);

    Rng rng(33);
    for (int n = 0; n < 40; ++n) {
        auto a = WeilAlgebra::build(oracle::random_presentation(rng));
        auto x = random_domain(rng, Field::Real, false, 1, 1);
        auto e = classify_embedding(thickening_embedding(x, a));
        CHECK(girth_of_embedding(e).girth == a->girth());
    }
    auto line1 = SuperDomain::affine(1, 0);
    auto not_nil = girth_of_embedding(subspace_embedding(FinSuperspace(line1, {fn(line1, "t1")})));
    CHECK_FALSE(not_nil.girth);
    REQUIRE(not_nil.non_nilpotent);
    CHECK(not_nil.non_nilpotent->to_string() == "t1");
    CHECK_THROWS_AS(girth_of_embedding(classify_embedding(thickening_embedding(line1, grassmann(3))), 2), BoundedVerdict);
}

TEST_CASE("tidy is the identity") {
    auto x = SuperDomain::affine(1, 1);
    FinSuperspace y(x, {fn(x, "th1")});
    auto t = tidy(y);
    CHECK(t.space.same_ideal(y));
    CHECK_FALSE(t.certificate.empty());
    CHECK(tidy(FinSuperspace(x)).space.is_ambient());
}

TEST_CASE("reduction, body and even part of domains") {
    CHECK(reduction(SuperDomain::affine(2, 3)).domain == SuperDomain::affine(2, 0));
    auto x = weil_thicken(SuperDomain::affine(1, 0), grassmann(2));
    CHECK(body(x).domain == SuperDomain::affine(1, 0));
    for (std::size_t m = 1; m <= 4; ++m) {
        auto ev = even_part(SuperDomain::affine(2, m));
        CHECK(ev.domain.p() == 2);
        CHECK(ev.domain.q() == 0);
        CHECK(ev.domain.coeff()->dim() == (std::size_t{1} << (m - 1)));
        CHECK(ev.domain.coeff()->dim_odd() == 0);
    }
    auto y = SuperDomain::affine(1, 2);
    auto f = fn(y, "t1 + 2*th1*th2*t1");
    auto lifted = even_part_of(f);
    CHECK(even_part(y).canonical.pullback(lifted) == f);
    CHECK_THROWS_AS(even_part_of(fn(y, "th1")), ParityError);
    CHECK(body_of(fn(weil_thicken(y, dual_numbers()), "t1 + e*th1 + e")).to_string() == "t1 + e");
}

TEST_CASE("functors respect identities and composition") {
    Rng rng(34);
    for (int n = 0; n < 80; ++n) {
        auto x = random_domain(rng);
        auto y = oracle::random_target(x, rng, rng.coin());
        auto z = oracle::random_target(y, rng, rng.coin());
        auto f = random_morphism(x, y, rng), g = random_morphism(y, z, rng);
        auto gf = compose(g, f);
        CHECK(reduction(SuperMorphism::identity(x)) == SuperMorphism::identity(reduction(x).domain));
        CHECK(body(SuperMorphism::identity(x)) == SuperMorphism::identity(body(x).domain));
        CHECK(even_part(SuperMorphism::identity(x)) == SuperMorphism::identity(even_part(x).domain));
        CHECK(reduction(gf) == compose(reduction(g), reduction(f)));
        CHECK(body(gf) == compose(body(g), body(f)));
        CHECK(even_part(gf) == compose(even_part(g), even_part(f)));
        // naturality of the canonical maps
        CHECK(compose(f, reduction(x).canonical) == compose(reduction(y).canonical, reduction(f)));
        CHECK(compose(f, body(x).canonical) == compose(body(y).canonical, body(f)));
        CHECK(compose(even_part(y).canonical, f) == compose(even_part(f), even_part(x).canonical));
    }
}

TEST_CASE("reduction and body preserve products") {
    Rng rng(35);
    int checked = 0;
    for (int n = 0; n < 60; ++n) {
        auto x = random_domain(rng), y = random_domain(rng);
        auto gx = random_function(x, rng, Parity::Even, 2, 2), hx = random_function(x, rng, Parity::Odd, 2, 2);
        auto gy = random_function(y, rng, Parity::Even, 2, 2);
        FinSuperspace a(x, {gx, hx}), b(y, {gy});
        auto [p1, p2] = product_projections(x, y);
        auto prod = p1.source();
        FinSuperspace ab(prod, {p1.pullback(gx), p1.pullback(hx), p2.pullback(gy)});

        CHECK(canonically_isomorphic(reduction(prod).domain, product(reduction(x).domain, reduction(y).domain)));
        CHECK(canonically_isomorphic(body(prod).domain, product(body(x).domain, body(y).domain)));

        auto [r1, r2] = product_projections(reduction(x).domain, reduction(y).domain);
        auto ra = reduction(a), rb = reduction(b);
        std::vector<Superfunction> rg;
        for (const auto& g : ra.generators()) rg.push_back(r1.pullback(g));
        for (const auto& g : rb.generators()) rg.push_back(r2.pullback(g));
        CHECK(canonically_isomorphic(reduction(ab), FinSuperspace(r1.source(), rg)));

        auto [b1, b2] = product_projections(body(x).domain, body(y).domain);
        auto ba = body(a), bb = body(b);
        std::vector<Superfunction> bg;
        for (const auto& g : ba.generators()) bg.push_back(b1.pullback(g));
        for (const auto& g : bb.generators()) bg.push_back(b2.pullback(g));
        CHECK(canonically_isomorphic(body(ab), FinSuperspace(b1.source(), bg)));
        ++checked;
    }
    CHECK(checked >= 50);
}
