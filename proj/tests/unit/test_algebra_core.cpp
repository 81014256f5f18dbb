#include "doctest.h"

#include "superkernel/errors.hpp"
#include "superkernel/ideal.hpp"
#include "superkernel/parse.hpp"
#include "superkernel/polynomial.hpp"
#include "support/oracles.hpp"

using namespace superkernel;

namespace {

ContextPtr ctx_t_th2() { return Context::make({"t"}, {"th1", "th2"}); }

SuperPolynomial gen(const ContextPtr& c, const std::string& n) { return SuperPolynomial::generator(c, n); }
SuperPolynomial cst(const ContextPtr& c, Scalar s) { return SuperPolynomial::constant(c, s); }

}  // namespace

TEST_CASE("scalar arithmetic is exact") {
    Scalar a = Scalar::rational(1, 3);
    Scalar b = Scalar::rational(2, 3);
    CHECK(a + b == Scalar(1));
    Scalar z(mpq_class(1, 2), mpq_class(3, 4));
    CHECK(z * z.inverse() == Scalar(1));
    CHECK(z.to_string() == "1/2+3/4*i");
    CHECK(Scalar::parse("1/2+3/4*i") == z);
    CHECK(Scalar::parse("-i") == -Scalar::imaginary_unit());
    CHECK(Scalar::parse("-2/3") == Scalar::rational(-2, 3));
    CHECK(Scalar::imaginary_unit().to_string() == "i");
    CHECK(Scalar(mpq_class(0), mpq_class(-2, 5)).to_string() == "-2/5*i");
    CHECK(a.is_k_valued());
    CHECK_FALSE(z.is_k_valued());
    CHECK_THROWS_AS(Scalar().inverse(), NotInvertibleError);
}

TEST_CASE("poly_mul sign rules") {
    auto c = ctx_t_th2();
    auto t = gen(c, "t"), th1 = gen(c, "th1"), th2 = gen(c, "th2");
    CHECK((th1 * th2).to_string() == "th1*th2");
    CHECK((th2 * th1).to_string() == "-th1*th2");
    CHECK((th1 * th1).is_zero());
    // (t + th1 th2)^2, expanded term by term with the word oracle
    auto f = t + th1 * th2;
    CHECK(f * f == oracle::word_product(f, f));
    CHECK((f * f).to_string() == "t^2 + 2*t*th1*th2");
}

TEST_CASE("poly_mul rejects mixed contexts") {
    auto a = ctx_t_th2();
    auto b = Context::make({"s"}, {});
    CHECK_THROWS_AS(gen(a, "t") * gen(b, "s"), ContextError);
}

TEST_CASE("supercommutativity and ring laws on random polynomials") {
    auto c = Context::make({"t1", "t2"}, {"th1", "th2", "th3"});
    Rng rng(20240611);
    for (int i = 0; i < 1000; ++i) {
        Parity pf = rng.coin() ? Parity::Odd : Parity::Even;
        Parity pg = rng.coin() ? Parity::Odd : Parity::Even;
        auto f = oracle::random_homogeneous(c, rng, pf, 3, 4);
        auto g = oracle::random_homogeneous(c, rng, pg, 3, 4);
        auto fg = f * g;
        auto gf = g * f;
        if (koszul(pf, pg) < 0) gf = -gf;
        REQUIRE(fg == gf);
        REQUIRE(fg == oracle::word_product(f, g));
    }
    for (int i = 0; i < 200; ++i) {
        auto f = oracle::random_poly(c, rng, 3, 4);
        auto g = oracle::random_poly(c, rng, 3, 4);
        auto h = oracle::random_poly(c, rng, 3, 4);
        REQUIRE((f * g) * h == f * (g * h));
        REQUIRE(f * (g + h) == f * g + f * h);
        REQUIRE((f + g) * h == f * h + g * h);
        REQUIRE(f * cst(c, 1) == f);
        REQUIRE(cst(c, 1) * f == f);
    }
}

TEST_CASE("grassmann_expand examples") {
    auto c = ctx_t_th2();
    auto t = gen(c, "t"), th1 = gen(c, "th1"), th2 = gen(c, "th2");
    auto parts = (t * t + cst(c, 2) * t * th1 * th2).grassmann_expand();
    REQUIRE(parts.size() == 2);
    CHECK(parts.at(0) == t * t);
    CHECK(parts.at(0b11) == cst(c, 2) * t);
    CHECK(SuperPolynomial(c).grassmann_expand().empty());
    auto single = (th1 + t * th1).grassmann_expand();
    REQUIRE(single.size() == 1);
    CHECK(single.at(0b01) == cst(c, 1) + t);
}

TEST_CASE("grassmann_expand round trip") {
    auto c = Context::make({"t1", "t2"}, {"th1", "th2", "th3"});
    Rng rng(7);
    for (int i = 0; i < 300; ++i) {
        auto f = oracle::random_poly(c, rng, 4, 6);
        auto parts = f.grassmann_expand();
        for (const auto& [odd, p] : parts) REQUIRE_FALSE(p.involves_odd());
        REQUIRE(SuperPolynomial::reassemble(c, parts) == f);
    }
}

TEST_CASE("canonical rendering") {
    auto c = Context::make({"t1"}, {"th1", "th2"});
    CHECK(SuperPolynomial(c).to_string() == "0");
    CHECK((gen(c, "t1") + gen(c, "th1") * gen(c, "th2")).to_string() == "t1 + th1*th2");
    auto l = Context::make({}, {"u", "v"});
    CHECK((cst(l, 1) - gen(l, "u") * gen(l, "v")).to_string() == "1 - u*v");
    auto z = Context::make({"t1", "t2"}, {}, Field::Complex);
    auto w = cst(z, Scalar(mpq_class(1, 2), mpq_class(1))) * gen(z, "t2") - cst(z, 3) * gen(z, "t1");
    CHECK(w.to_string() == "-3*t1 + (1/2+i)*t2");
}

TEST_CASE("normal_form examples") {
    auto c = Context::make({"t"}, {});
    auto t = gen(c, "t");
    CHECK(normal_form(t, IdealBasis(c, {t})).is_zero());
    // t^2 modulo <t^3>: the leading term t^2 is not divisible by t^3
    CHECK(normal_form(t * t, IdealBasis(c, {t.pow(3)})) == t * t);

    auto xy = Context::make({"x", "y"}, {});
    auto x = gen(xy, "x"), y = gen(xy, "y");
    IdealBasis diag(xy, {x - y});
    CHECK(diag.contains(x - y));
    CHECK(diag.contains(x * x - y * y));
    CHECK(diag.normal_form(x) == diag.normal_form(y));
}

TEST_CASE("normal_form with odd generators") {
    auto c = Context::make({"t"}, {"th"});
    auto t = gen(c, "t"), th = gen(c, "th");
    IdealBasis j(c, {cst(c, 2) * th});
    CHECK(j.contains(th));
    CHECK(j.contains(t * th));
    CHECK_FALSE(j.contains(t));
    // <t*th> does not contain th
    IdealBasis k(c, {t * th});
    CHECK_FALSE(k.contains(th));
    CHECK(k.contains(t * t * th));
    CHECK_THROWS_AS(IdealBasis(c, {t + th}), ParityError);
}

TEST_CASE("normal_form is idempotent, linear and agrees with the span oracle") {
    Rng rng(99);
    int members = 0;
    for (int trial = 0; trial < 60; ++trial) {
        auto p = static_cast<std::size_t>(rng.uniform(1, 3));
        auto q = static_cast<std::size_t>(rng.uniform(0, 3));
        std::vector<std::string> ev, od;
        for (std::size_t k = 0; k < p; ++k) ev.push_back("t" + std::to_string(k + 1));
        for (std::size_t k = 0; k < q; ++k) od.push_back("th" + std::to_string(k + 1));
        auto c = Context::make(ev, od);
        std::vector<SuperPolynomial> gens;
        int ngens = static_cast<int>(rng.uniform(1, 3));
        for (int k = 0; k < ngens; ++k) {
            Parity par = (q > 0 && rng.coin(30)) ? Parity::Odd : Parity::Even;
            int d = static_cast<int>(rng.uniform(1, 3));
            auto g = oracle::random_homogeneous(c, rng, par, d, 3, d);
            if (!g.is_zero()) gens.push_back(g);
        }
        IdealBasis ideal(c, gens);
        for (int s = 0; s < 8; ++s) {
            SuperPolynomial f(c);
            if (rng.coin()) {
                for (const auto& g : gens) {
                    auto h = oracle::random_poly(c, rng, 2, 3);
                    f += (h * g).truncated(6);
                }
                // truncation of a sum of homogeneous pieces keeps membership
            } else {
                f = oracle::random_poly(c, rng, 6, 5);
            }
            f = f.truncated(6);
            auto nf = ideal.normal_form(f);
            REQUIRE(ideal.normal_form(nf) == nf);
            bool oracle_member = oracle::homogeneous_ideal_contains(gens, f);
            REQUIRE(nf.is_zero() == oracle_member);
            members += oracle_member;
            auto g2 = oracle::random_poly(c, rng, 4, 4);
            Scalar a = oracle::small_rational(rng);
            REQUIRE(ideal.normal_form(f + a * g2) == nf + a * ideal.normal_form(g2));
        }
    }
    CHECK(members > 20);
}

TEST_CASE("degree-capped normal forms are flagged bounded") {
    auto c = Context::make({"t"}, {});
    auto t = gen(c, "t");
    IdealBasis capped(c, {t * t - t}, 4);
    auto r = capped.reduce(t.pow(3) - t);
    CHECK(r.bounded);
    CHECK(r.value.is_zero());
    CHECK_THROWS_AS(capped.reduce(t.pow(5)), TruncationError);
    IdealBasis exact(c, {t * t - t});
    CHECK_FALSE(exact.reduce(t.pow(3) - t).bounded);
}

TEST_CASE("taylor_truncate examples") {
    auto c = Context::make({"t"}, {});
    auto t = gen(c, "t");
    std::vector<Scalar> one{Scalar(1)}, zero{Scalar(0)};
    // binomial re-expansion: t^2 = (1 + s)^2 = 1 + 2 s + s^2, keep 1 + 2 s
    CHECK(taylor_truncate(t * t, one, 1) == cst(c, 1) + cst(c, 2) * (t - cst(c, 1)));
    CHECK(taylor_coefficients(t * t, one, 1) == cst(c, 1) + cst(c, 2) * t);
    CHECK(taylor_truncate(t * t, zero, 2) == t * t);
    CHECK(taylor_truncate(t * t, zero, 5) == t * t);
    std::vector<Scalar> pt{Scalar::rational(3, 7)};
    CHECK(taylor_truncate(cst(c, Scalar::rational(5, 2)), pt, 0) == cst(c, Scalar::rational(5, 2)));
    CHECK(taylor_remainder_certified(t * t, cst(c, 2) * t - cst(c, 1), one, 1));
}

TEST_CASE("taylor_truncate matches the binomial oracle for univariate polynomials") {
    auto c = Context::make({"t"}, {});
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        auto f = oracle::random_poly(c, rng, 6, 5);
        Scalar x = oracle::small_rational(rng);
        int n = static_cast<int>(rng.uniform(0, 4));
        // sum_k C(e,k) x^(e-k) s^k for each term c t^e, truncated at k <= n
        SuperPolynomial expected(c);
        for (const auto& [m, coef] : f.terms()) {
            unsigned e = m.exps[0];
            mpz_class binom = 1;
            for (unsigned k = 0; k <= e; ++k) {
                if (static_cast<int>(k) <= n) {
                    Scalar xp(1);
                    for (unsigned r = 0; r < e - k; ++r) xp *= x;
                    Monomial s;
                    s.exps = {static_cast<std::uint16_t>(k)};
                    expected.add_term(s, coef * xp * Scalar(mpq_class(binom)));
                }
                binom = binom * (e - k) / (k + 1);
            }
        }
        std::vector<Scalar> pt{x};
        REQUIRE(taylor_coefficients(f, pt, n) == expected);
    }
}

TEST_CASE("taylor_truncate remainder and uniqueness") {
    auto c = Context::make({"t1", "t2"}, {});
    Rng rng(11);
    for (int i = 0; i < 20; ++i) {
        auto f = oracle::random_poly(c, rng, 5, 5);
        std::vector<Scalar> x{oracle::small_rational(rng), oracle::small_rational(rng)};
        int n = static_cast<int>(rng.uniform(0, 3));
        auto p = taylor_truncate(f, x, n);
        REQUIRE(taylor_remainder_certified(f, p, x, n));
        // perturb inside degree <= n (in t - x): never a valid jet
        auto delta = oracle::random_poly(c, rng, n, 2);
        if (delta.is_zero()) continue;
        auto q = p + taylor_truncate(delta, x, n);
        if (q == p) continue;
        REQUIRE_FALSE(taylor_remainder_certified(f, q, x, n));
    }
}

TEST_CASE("ideal_power generators") {
    auto c = Context::make({"x", "y"}, {});
    auto x = gen(c, "x"), y = gen(c, "y");
    std::vector<SuperPolynomial> g{x, y};
    auto sq = ideal_power(g, 2);
    CHECK(sq.size() == 3);
    IdealBasis m2(c, sq);
    CHECK(m2.contains(x * y));
    CHECK_FALSE(m2.contains(x));
}

TEST_CASE("parse_polynomial reads back canonical renderings") {
    auto c = Context::make({"t1", "t2"}, {"th1", "th2"}, Field::Complex);
    Rng rng(3);
    for (int k = 0; k < 200; ++k) {
        auto f = oracle::random_poly(c, rng, 4, 5);
        if (rng.coin(30)) f = f * cst(c, Scalar(mpq_class(0), mpq_class(rng.uniform(-3, 3))));
        REQUIRE(parse_polynomial(c, f.to_string()) == f);
    }
    CHECK(parse_polynomial(c, "(t1 + th1*th2)^2") == parse_polynomial(c, "t1^2 + 2*t1*th1*th2"));
    CHECK(parse_polynomial(c, "th2*th1") == -parse_polynomial(c, "th1*th2"));
    CHECK(parse_polynomial(c, "t1/2 - 3/4") == parse_polynomial(c, "1/2*t1 - 3/4"));
    CHECK(parse_polynomial(c, "-(-t2)") == gen(c, "t2"));
}

TEST_CASE("parse_polynomial errors carry offsets") {
    auto c = Context::make({"t"}, {});
    try {
        parse_polynomial(c, "t + q");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.offset() == 4);
    }
    CHECK_THROWS_AS(parse_polynomial(c, "t / t"), SyntaxError);
    CHECK_THROWS_AS(parse_polynomial(c, "(t"), SyntaxError);
    CHECK_THROWS_AS(parse_polynomial(c, "2*i"), SyntaxError);
    CHECK_THROWS_AS(parse_polynomial(c, "t +"), SyntaxError);
}
