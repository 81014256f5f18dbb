#include "doctest.h"

#include "superkernel/errors.hpp"
#include "superkernel/functors.hpp"
#include "superkernel/interval_eval.hpp"
#include "superkernel/limits.hpp"
#include "superkernel/parse.hpp"
#include "superkernel/real_roots.hpp"
#include "support/morphism_gen.hpp"

using namespace superkernel;
using oracle::random_components;
using oracle::random_domain;
using oracle::random_function;
using oracle::random_morphism;

namespace {

Superfunction fn(const SuperDomain& x, const std::string& text) { return Superfunction::parse(x, text); }

SuperDomain line(const std::string& name = "t1") { return SuperDomain(Context::make({name}, {})); }

SuperDomain on_box(std::size_t p, std::size_t q, Box box) {
    return SuperDomain(standard_coordinates(p, q), std::move(box));
}

mpq_class q(long a, long b = 1) { return mpq_class(a, b); }

}  // namespace

TEST_CASE("interval ranges enclose sampled values") {
    Rng rng(11);
    auto ctx = standard_coordinates(2, 0);
    for (int n = 0; n < 300; ++n) {
        SuperPolynomial f(ctx);
        for (int k = 0; k < 3; ++k)
            f.add_term(oracle::random_monomial(ctx, rng, static_cast<int>(rng.uniform(0, 3))), oracle::small_rational(rng));
        Box box;
        for (int k = 0; k < 2; ++k) {
            auto a = rng.uniform(-3, 2);
            auto b = a + rng.uniform(1, 3);
            box.push_back(rng.coin() ? Interval::closed(a, b) : Interval::open(a, b));
        }
        Range r = evaluate_range(f, box);
        for (const auto& x : sample_points(box, 64)) {
            mpq_class v = f.evaluate_reduced(std::vector<Scalar>{Scalar(x[0]), Scalar(x[1])}).re();
            Interval enclosure;
            if (r.lo.inf == 0) enclosure.lo = r.lo.value, enclosure.lo_closed = !r.lo.open;
            if (r.hi.inf == 0) enclosure.hi = r.hi.value, enclosure.hi_closed = !r.hi.open;
            CHECK(enclosure.contains(v));
        }
    }
}

TEST_CASE("interval range endpoints") {
    auto ctx = standard_coordinates(1, 0);
    auto t = SuperPolynomial::even_generator(ctx, 0);
    CHECK(evaluate_range(t * t, {Interval::open(-1, 2)}).to_string() == "[0, 4)");
    CHECK(evaluate_range(t * t * t, {Interval::closed(-1, 2)}).to_string() == "[-1, 8]");
    CHECK(evaluate_range(t * Scalar(-2) + SuperPolynomial::constant(ctx, 1), {Interval::line()}).to_string() ==
          "(-inf, inf)");
    CHECK(evaluate_range(t * t, {Interval{q(1), std::nullopt, false, false}}).to_string() == "(1, inf)");
    CHECK(evaluate_range(t, {Interval::closed(0, 1)}).inside(Interval::closed(0, 1)));
    CHECK_FALSE(evaluate_range(t, {Interval::closed(0, 1)}).inside(Interval::open(0, 1)));
    CHECK(evaluate_range(t, {Interval::open(0, 1)}).inside(Interval::open(0, 1)));
}

TEST_CASE("real root isolation") {
    UnivariatePoly p{q(-1), q(0), q(1)};  // t^2 - 1
    auto roots = isolate_real_roots(p, Interval::line());
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].exact);
    CHECK(roots[0].lo == -1);
    CHECK(roots[1].lo == 1);
    CHECK(isolate_real_roots(p, Interval::open(-1, 1)).empty());
    CHECK(isolate_real_roots(p, Interval::closed(0, 1)).size() == 1);

    UnivariatePoly two{q(-2), q(0), q(1)};  // t^2 - 2
    auto r2 = isolate_real_roots(two, Interval::line());
    REQUIRE(r2.size() == 2);
    for (const auto& r : r2) {
        CHECK_FALSE(r.exact);
        CHECK(sgn(evaluate(two, r.lo)) * sgn(evaluate(two, r.hi)) < 0);
        CHECK(r.hi - r.lo <= q(1, 1024));
    }
    // (t - 1/3)^2 (t^2 + 1) (t - 5): a double rational root and one more real root
    UnivariatePoly g{q(1, 9), q(-2, 3), q(1)};
    // build the product explicitly
    auto mul = [](const UnivariatePoly& a, const UnivariatePoly& b) {
        UnivariatePoly c(a.size() + b.size() - 1);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
        return c;
    };
    auto f = mul(mul(g, UnivariatePoly{q(1), q(0), q(1)}), UnivariatePoly{q(-5), q(1)});
    auto r3 = isolate_real_roots(f, Interval::line());
    REQUIRE(r3.size() == 2);
    CHECK(r3[0].exact);
    CHECK(r3[0].lo == q(1, 3));
    CHECK(r3[1].lo == 5);
    CHECK(count_roots(f, q(-10), q(10)) == 2);
}

TEST_CASE("make_morphism verdicts and errors") {
    auto x = SuperDomain::affine(1, 2), y = SuperDomain::affine(1, 0);
    auto phi = SuperMorphism::make(x, y, {fn(x, "t1 + th1*th2")});
    CHECK(phi.verdict() == MappingVerdict::Verified);
    CHECK(SuperMorphism::identity(SuperDomain::affine(2, 2)).verdict() == MappingVerdict::Verified);

    auto a = on_box(1, 0, {Interval::closed(0, 1)}), b = on_box(1, 0, {Interval::closed(2, 3)});
    CHECK_THROWS_AS(SuperMorphism::make(a, b, {fn(a, "t1")}), MappingConditionError);
    CHECK(SuperMorphism::make(a, b, {fn(a, "t1 + 2")}).verdict() == MappingVerdict::Verified);
    // t - t^2 maps [0,1] into [0,1/4], which interval evaluation cannot see
    auto unit = on_box(1, 0, {Interval::closed(0, 1)});
    CHECK(SuperMorphism::make(unit, unit, {fn(unit, "t1 - t1^2")}).verdict() == MappingVerdict::Unknown);

    CHECK_THROWS_AS(SuperMorphism::make(x, y, {fn(x, "th1")}), ParityError);
    CHECK_THROWS_AS(SuperMorphism::make(x, y, {fn(x, "t1"), fn(x, "t1")}), ContextError);
    auto xc = SuperDomain::affine(1, 1, Field::Complex), yc = SuperDomain::affine(1, 1, Field::Complex);
    CHECK_THROWS_AS(SuperMorphism::make(xc, yc, {fn(xc, "i*t1"), fn(xc, "th1")}), ValueFieldError);
    auto ok = SuperMorphism::make(xc, yc, {fn(xc, "t1"), fn(xc, "i*th1")});
    CHECK(ok.component(1).to_string() == "i*th1");
    CHECK_THROWS_AS(SuperMorphism::make(x, SuperDomain::affine(1, 0, Field::Complex), {fn(x, "t1")}), FieldError);
}

TEST_CASE("verified morphisms map sampled points into the target box") {
    Rng rng(5);
    for (int n = 0; n < 200; ++n) {
        auto a = rng.uniform(-2, 1), b = a + rng.uniform(1, 2);
        auto x = on_box(1, 0, {Interval::open(a, b)});
        auto c = rng.uniform(-4, 0), d = c + rng.uniform(1, 6);
        auto y = on_box(1, 0, {Interval::closed(c, d)});
        auto f = random_function(x, rng, Parity::Even, 2, 3);
        try {
            auto phi = SuperMorphism::make(x, y, {f});
            if (phi.verdict() != MappingVerdict::Verified) continue;
            for (const auto& pt : sample_points(x.box()))
                CHECK(box_contains(y.box(), phi.map_point(pt)));
        } catch (const MappingConditionError&) {
        }
    }
}

TEST_CASE("pullback and composition examples") {
    auto x = SuperDomain::affine(1, 2), y = SuperDomain::affine(1, 0);
    auto phi = SuperMorphism::make(x, y, {fn(x, "t1 + th1*th2")});
    CHECK(phi.pullback(fn(y, "t1^2")).to_string() == "t1^2 + 2*t1*th1*th2");
    auto id = SuperMorphism::identity(y);
    CHECK(id.pullback(fn(y, "t1^3 - 2")) == fn(y, "t1^3 - 2"));

    auto tau = SuperDomain(Context::make({}, {"u", "v"}));
    auto s = line("s");
    auto f = SuperMorphism::make(tau, s, {fn(tau, "u*v")});
    auto g = SuperMorphism::make(s, line(), {fn(s, "s^2 + 1")});
    CHECK(compose(g, f).component(0).to_string() == "1");
    CHECK_THROWS_AS(compose(f, g), ContextError);
}

TEST_CASE("pullback is an even unital ring morphism") {
    Rng rng(21);
    for (int n = 0; n < 150; ++n) {
        Field field = rng.coin(30) ? Field::Complex : Field::Real;
        auto x = random_domain(rng, field);
        auto y = oracle::random_target(x, rng, rng.coin());
        auto phi = random_morphism(x, y, rng);
        Parity pf = rng.coin() ? Parity::Odd : Parity::Even, pg = rng.coin() ? Parity::Odd : Parity::Even;
        auto f = random_function(y, rng, pf, 2, 3, false), g = random_function(y, rng, pg, 2, 3, false);
        CHECK(phi.pullback(f * g) == phi.pullback(f) * phi.pullback(g));
        CHECK(phi.pullback(f + g) == phi.pullback(f) + phi.pullback(g));
        CHECK(phi.pullback(Superfunction::constant(y, 1)) == Superfunction::constant(x, 1));
        CHECK(phi.pullback(f).has_parity(pf));
    }
}

TEST_CASE("composition is associative with neutral identities") {
    Rng rng(22);
    for (int n = 0; n < 100; ++n) {
        auto w = random_domain(rng);
        auto x = oracle::random_target(w, rng, rng.coin());
        auto y = oracle::random_target(x, rng, rng.coin());
        auto z = oracle::random_target(y, rng, rng.coin());
        auto f = random_morphism(w, x, rng), g = random_morphism(x, y, rng), h = random_morphism(y, z, rng);
        CHECK(compose(h, compose(g, f)) == compose(compose(h, g), f));
        CHECK(compose(SuperMorphism::identity(x), f) == f);
        CHECK(compose(f, SuperMorphism::identity(w)) == f);
        auto gf = compose(g, f);
        auto c = random_function(y, rng, Parity::Even, 2, 3);
        CHECK(gf.pullback(c) == f.pullback(g.pullback(c)));
    }
}

TEST_CASE("morphisms round trip through their components") {
    Rng rng(23);
    for (int n = 0; n < 1000; ++n) {
        Field field = rng.coin(25) ? Field::Complex : Field::Real;
        auto x = random_domain(rng, field);
        auto y = oracle::random_target(x, rng, rng.coin());
        auto comps = random_components(x, y, rng);
        auto phi = SuperMorphism::make(x, y, comps);
        CHECK(phi.components() == comps);
        CHECK(SuperMorphism::make(x, y, phi.components(), phi.coeff_images()) == phi);
        for (std::size_t a = 0; a < comps.size(); ++a) {
            Superfunction coord = a < y.p() ? Superfunction::even_coordinate(y, a) : Superfunction::odd_coordinate(y, a - y.p());
            CHECK(phi.pullback(coord) == comps[a]);
        }
    }
}

TEST_CASE("values are compatible with the reduced map") {
    Rng rng(24);
    auto x = SuperDomain::affine(1, 0), y = SuperDomain::affine(1, 0);
    auto sq = SuperMorphism::make(x, y, {fn(x, "t1^2")});
    CHECK(value_at(sq.pullback(fn(y, "t1")), std::vector<mpq_class>{2}) == Scalar(4));
    CHECK(value_compat_check(SuperMorphism::identity(SuperDomain::affine(2, 1)), rng).ok());
    for (int n = 0; n < 60; ++n) {
        auto a = random_domain(rng);
        auto b = oracle::random_target(a, rng, rng.coin());
        auto report = value_compat_check(random_morphism(a, b, rng), rng, 4);
        CHECK(report.ok());
    }
}

TEST_CASE("thickening embedding and retraction") {
    auto x = SuperDomain::affine(1, 1);
    auto a = grassmann(2);
    auto j = thickening_embedding(x, a), r = thickening_retraction(x, a);
    CHECK(compose(r, j) == SuperMorphism::identity(x));
    auto xa = weil_thicken(x, a);
    auto f = fn(xa, "t1 + tau1*tau2*t1 + th1*tau1");
    CHECK(j.pullback(f) == fn(x, "t1"));
    CHECK(r.pullback(fn(x, "t1^2 + th1")) == fn(xa, "t1^2 + th1"));
}

TEST_CASE("Weil decomposition examples") {
    auto pt = SuperDomain::affine(0, 0);
    auto a = grassmann(2);
    auto s = weil_thicken(pt, a), line1 = SuperDomain::affine(1, 0);
    auto phi = SuperMorphism::make(s, line1, {fn(s, "3 + 5*tau1*tau2")});
    auto d = decompose_weil(phi);
    CHECK(d.base.component(0).to_string() == "3");
    REQUIRE(d.table[0].size() == 3);
    CHECK(a->basis_name(3) == "tau1*tau2");
    CHECK(d.table[0][2].to_string() == "5");
    CHECK(d.table[0][0].is_zero());
    CHECK(recompose_weil(d) == phi);

    auto id = SuperMorphism::identity(SuperDomain::affine(1, 1));
    auto trivial = decompose_weil(id);
    CHECK(trivial.table[0].empty());
    CHECK(trivial.base == id);

    // points of A^{1|1} with values in Lambda(1), over Q[i]: (a, c) with a real
    auto ptc = SuperDomain::affine(0, 0, Field::Complex);
    auto s1 = weil_thicken(ptc, grassmann(1, Field::Complex));
    auto target = SuperDomain::affine(1, 1, Field::Complex);
    auto psi = SuperMorphism::make(s1, target, {fn(s1, "2"), fn(s1, "(1+2*i)*tau1")});
    auto dp = decompose_weil(psi);
    CHECK(dp.base.component(0).to_string() == "2");
    CHECK(dp.base.component(1).is_zero());
    CHECK(dp.table[0][0].is_zero());
    CHECK(dp.table[1][0].to_string() == "1+2*i");
    CHECK_THROWS_AS(SuperMorphism::make(s1, target, {fn(s1, "i"), fn(s1, "tau1")}), ValueFieldError);
}

TEST_CASE("Weil decomposition round trips and keeps the verdict") {
    Rng rng(25);
    WeilPtr pool[] = {dual_numbers(Field::Complex), grassmann(1, Field::Complex), grassmann(2, Field::Complex),
                      super_dual_numbers(Field::Complex), multijet(1, 0, 2, Field::Complex)};
    for (int n = 0; n < 150; ++n) {
        const auto& a = pool[n % 5];
        auto s = random_domain(rng, Field::Complex, false, 1, 1);
        auto sa = weil_thicken(s, a);
        auto c = rng.uniform(-2, 0), dlen = rng.uniform(1, 3);
        Box box(static_cast<std::size_t>(rng.uniform(0, 2)), Interval::open(c, c + dlen));
        auto x = SuperDomain(standard_coordinates(box.size(), static_cast<std::size_t>(rng.uniform(0, 2)), Field::Complex), box);
        std::vector<Superfunction> comps;
        try {
            auto phi = SuperMorphism::make(sa, x, random_components(sa, x, rng));
            auto d = decompose_weil(phi);
            CHECK(recompose_weil(d) == phi);
            CHECK(d.base.verdict() == phi.verdict());
            CHECK(d.base.source() == s);
        } catch (const MappingConditionError&) {
        }
    }
}
