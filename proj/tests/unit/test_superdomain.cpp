#include "doctest.h"

#include "superkernel/errors.hpp"
#include "superkernel/superdomain.hpp"
#include "support/weil_gen.hpp"

using namespace superkernel;

namespace {

Point pt(std::initializer_list<long> xs) {
    Point p;
    for (long x : xs) p.emplace_back(x);
    return p;
}

Superfunction random_function(const SuperDomain& x, Rng& rng, int max_degree = 3) {
    auto f = oracle::random_poly(x.combined_context(), rng, max_degree, 4);
    return Superfunction::from_combined(x, f);
}

}  // namespace

TEST_CASE("intervals") {
    auto a = Interval::open(0, 1);
    CHECK(a.contains(mpq_class(1, 2)));
    CHECK_FALSE(a.contains(mpq_class(0)));
    CHECK(Interval::closed(0, 1).contains(a));
    CHECK_FALSE(a.contains(Interval::closed(0, 1)));
    CHECK(Interval::line().contains(Interval::closed(-5, 5)));
    CHECK(Interval::open(0, 0).empty());
    CHECK_FALSE(Interval::point(0).empty());
    CHECK(a.intersect(Interval::closed(mpq_class(1, 2), 3)).to_string() == "[1/2, 1)");
    CHECK(Interval::line().to_string() == "(-inf, inf)");
}

TEST_CASE("value_at examples") {
    auto x = SuperDomain::affine(1, 2);
    auto f = Superfunction::parse(x, "t1 + th1*th2");
    CHECK(value_at(f, pt({2})) == Scalar(2));
    CHECK(value_at(Superfunction::parse(x, "th1"), pt({5})).is_zero());
    auto xd = weil_thicken(SuperDomain::affine(1, 0), dual_numbers());
    auto g = Superfunction::parse(xd, "(1 + e)*t1");
    CHECK(value_at(g, pt({3})) == Scalar(3));
    auto boxed = SuperDomain(standard_coordinates(1, 0), {Interval::open(0, 1)});
    CHECK_THROWS_AS(value_at(Superfunction::parse(boxed, "t1"), pt({2})), DomainError);
}

TEST_CASE("reduce and nilpotent_part examples") {
    auto x = SuperDomain::affine(1, 2);
    auto f = Superfunction::parse(x, "t1 + th1*th2");
    CHECK(reduce(f).to_string() == "t1");
    CHECK(nilpotent_part(f).to_string() == "th1*th2");
    CHECK(reduce(Superfunction::parse(x, "th1")).is_zero());
    auto xd = weil_thicken(SuperDomain::affine(1, 0), dual_numbers());
    auto g = Superfunction::parse(xd, "t1^2 + e*t1");
    CHECK(reduce(g).to_string() == "t1^2");
    CHECK(nilpotent_part(g).to_string() == "t1*e");
}

TEST_CASE("value_at is a ring morphism and odd functions vanish") {
    Rng rng(12);
    std::vector<SuperDomain> doms = {SuperDomain::affine(2, 2), weil_thicken(SuperDomain::affine(1, 1), grassmann(2)),
                                     weil_thicken(SuperDomain::affine(2, 0), super_dual_numbers())};
    for (const auto& x : doms) {
        for (int k = 0; k < 100; ++k) {
            auto f = random_function(x, rng), g = random_function(x, rng);
            Point p;
            for (std::size_t i = 0; i < x.p(); ++i) p.emplace_back(mpq_class(rng.uniform(-5, 5), rng.uniform(1, 3)));
            REQUIRE(value_at(f * g, p) == value_at(f, p) * value_at(g, p));
            REQUIRE(value_at(f + g, p) == value_at(f, p) + value_at(g, p));
            auto h = random_function(x, rng);
            REQUIRE(f == reduce(f) + nilpotent_part(f));
            // nilpotency bound (q + 1)(girth C + 1)
            unsigned bound = static_cast<unsigned>((x.q() + 1) * (x.coeff()->girth() + 1));
            REQUIRE(nilpotent_part(h).pow(bound).is_zero());
            if (h.parity() == Parity::Odd) REQUIRE(value_at(h, p).is_zero());
        }
    }
}

TEST_CASE("superfunction products are supercommutative and associative") {
    Rng rng(13);
    auto x = weil_thicken(SuperDomain::affine(1, 2), WeilAlgebra::tensor(grassmann(1), dual_numbers()));
    for (int k = 0; k < 200; ++k) {
        auto pf = rng.coin() ? Parity::Odd : Parity::Even, pg = rng.coin() ? Parity::Odd : Parity::Even;
        auto f = Superfunction::from_combined(x, oracle::random_homogeneous(x.combined_context(), rng, pf, 3, 3));
        auto g = Superfunction::from_combined(x, oracle::random_homogeneous(x.combined_context(), rng, pg, 3, 3));
        auto h = random_function(x, rng);
        REQUIRE(f * g == Scalar(koszul(pf, pg)) * (g * f));
        REQUIRE((f * g) * h == f * (g * h));
        // agrees with the product of combined polynomials reduced in C
        REQUIRE(f * g == Superfunction::from_combined(x, f.to_polynomial() * g.to_polynomial()));
    }
}

TEST_CASE("parse and render round trip") {
    Rng rng(14);
    auto x = weil_thicken(SuperDomain::affine(2, 1, Field::Complex), complexify(grassmann(2)));
    for (int k = 0; k < 100; ++k) {
        auto f = random_function(x, rng);
        REQUIRE(Superfunction::parse(x, f.to_string()) == f);
    }
}

TEST_CASE("weil_thicken") {
    auto x = SuperDomain::affine(1, 0);
    auto xa = weil_thicken(x, grassmann(2));
    CHECK(xa.coeff()->graded_dim() == "2|2");
    auto f = Superfunction::parse(xa, "t1*tau1*tau2 + tau1");
    CHECK(f.parity() == std::nullopt);
    CHECK(weil_thicken(x, WeilAlgebra::ground()) == x);
    auto a = grassmann(1), b = dual_numbers();
    auto twice = weil_thicken(weil_thicken(x, a), b);
    auto once = weil_thicken(x, WeilAlgebra::tensor(a, b));
    CHECK(twice.coeff()->same_structure(*once.coeff()));
    CHECK(twice == once);
}

TEST_CASE("products and restriction") {
    auto xy = product(SuperDomain::affine(1, 0), SuperDomain::affine(0, 1));
    CHECK(xy.dim_string() == "1|1");
    CHECK(xy.coordinates()->same_as(*standard_coordinates(1, 1)));
    auto x = SuperDomain::affine(2, 1);
    CHECK(product(x, SuperDomain::affine(0, 0)) == x);
    auto a = SuperDomain(standard_coordinates(1, 0), {Interval::closed(0, 1)});
    auto b = SuperDomain(standard_coordinates(1, 0), {Interval::closed(2, 3)});
    CHECK(box_to_string(product(a, b).box()) == "[0, 1] x [2, 3]");

    auto line = SuperDomain::affine(1, 0);
    CHECK(restrict(line, line.box()) == line);
    CHECK_THROWS_AS(restrict(line, {Interval::open(1, 1)}), DomainError);
    auto sub = restrict(line, {Interval::closed(0, 1)});
    CHECK(sub.box()[0] == Interval::closed(0, 1));
    CHECK_THROWS_AS(restrict(sub, {Interval::closed(0, 2)}), DomainError);
}

TEST_CASE("cs data: k-valued reduced parts") {
    auto x = SuperDomain::affine(1, 1, Field::Complex);
    CHECK(Superfunction::parse(x, "t1 + i*th1").is_k_valued());
    CHECK_FALSE(Superfunction::parse(x, "i*t1").is_k_valued());
}
