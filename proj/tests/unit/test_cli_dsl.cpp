#include "doctest.h"

#include "dsl/internal.hpp"
#include "superkernel/functors.hpp"
#include "support/morphism_gen.hpp"

using namespace superkernel;
using namespace superkernel::dsl;

namespace {

Report run_text(const std::string& src, Options o = {}) { return run(src, o); }

ScriptError parse_error(const std::string& src) {
    try {
        parse(src);
    } catch (const ScriptError& e) {
        return e;
    }
    FAIL("no parse error for: " << src);
    return ScriptError("", {});
}

Env define_all(const std::string& src, const Options& o) {
    Env env{o, {}};
    for (const auto& st : parse(src).statements) define(env, st);
    return env;
}

Interval random_interval(Rng& rng) {
    auto frac = [&](long lo, long hi, long den) {
        mpq_class q(rng.uniform(lo, hi), rng.uniform(1, den));
        q.canonicalize();
        return q;
    };
    mpq_class a = frac(-4, 4, 3);
    mpq_class b = a + frac(1, 5, 2);
    switch (rng.uniform(0, 4)) {
        case 0: return Interval::line();
        case 1: return Interval::open(a, b);
        case 2: return Interval::closed(a, b);
        case 3: return Interval{a, std::nullopt, true, false};
        default: return Interval{std::nullopt, b, false, rng.coin()};
    }
}

/// Domains with custom names, boxes and coefficient algebras.
SuperDomain random_named_domain(Rng& rng, Field field) {
    auto x = oracle::random_domain(rng, field);
    ContextPtr ctx = x.coordinates();
    if (rng.coin()) {
        std::vector<std::string> even{"u", "v"}, odd{"s", "r"};
        even.resize(x.p());
        odd.resize(x.q());
        ctx = Context::make(even, odd, field);
    }
    Box box;
    for (std::size_t k = 0; k < x.p(); ++k) box.push_back(random_interval(rng));
    return SuperDomain(ctx, box, x.coeff());
}

}  // namespace

TEST_CASE("syntax errors carry line and column") {
    auto e = parse_error("algebra A = dual()\ndomain X = affine(1|0)\nshow thicken(X, Q)\n");
    CHECK(e.span().line == 3);
    CHECK(e.span().column == 17);
    CHECK(std::string(e.what()) == "undefined name 'Q'");

    e = parse_error("algebra A = weil { even: [x] }");
    CHECK(std::string(e.what()) == "weil algebra needs a truncation order");

    e = parse_error("algebra A = dual()\nalgebra A = dual()");
    CHECK(e.span().line == 2);
    CHECK(e.span().column == 9);

    e = parse_error("domain X = affine(1|0)\n  frobnicate X");
    CHECK(e.span().line == 2);
    CHECK(e.span().column == 3);

    e = parse_error("algebra A = dual()\nshow girth(A, A)");
    CHECK(std::string(e.what()) == "no form of 'girth' takes (algebra, algebra)");

    e = parse_error("domain X = affine(2|0) on [(0, 1)]");
    CHECK(std::string(e.what()) == "box must have one interval per even coordinate");

    e = parse_error("algebra A = dual()\ncheck weil-laws A");
    CHECK(std::string(e.what()) == "'A' is not a morphism");

    e = parse_error("algebra A = dual()\ncheck locality A with A");
    CHECK(std::string(e.what()) == "'locality' takes no 'with' list");
}

TEST_CASE("expression errors point into the script") {
    auto r = run_text("domain X = affine(1|0)\nshow function(X,  t1 * )\n");
    CHECK(r.exit_code == kUsageError);
    CHECK(r.diagnostics == "line 2, column 23: error: unexpected end of expression\n");

    r = run_text("domain X = affine(1|0)\nshow function(X, t1 + zz)\n");
    CHECK(r.exit_code == kUsageError);
    CHECK(r.diagnostics.rfind("line 2, column 23: error:", 0) == 0);
}

TEST_CASE("exit codes") {
    CHECK(run_text("algebra A = grassmann(2)\nshow girth(A)\n").exit_code == kOk);
    CHECK(run_text("show girth(A)\n").exit_code == kUsageError);

    auto r = run_text("domain X = affine(1|0) on [(0, 1)]\nmorphism m : X -> X = { t1 = t1 + 1 }\nshow girth(dual())\n");
    CHECK(r.exit_code == kKernelError);
    CHECK(r.diagnostics.rfind("line 2, column 1: MappingConditionError:", 0) == 0);
    CHECK(r.output.find("girth(dual())") == std::string::npos);

    r = run_text("domain X = affine(1|1)\nmorphism m : X -> X = { t1 = t1, th1 = th1 }\ncheck jacobian m\nshow girth(dual())\n");
    CHECK(r.exit_code == kCheckFailed);
    CHECK(r.output.find("check jacobian m: FAILED, 0 of 1 cases passed") != std::string::npos);
    CHECK(r.output.find("girth(dual()) = 1") != std::string::npos);
}

TEST_CASE("morphism definitions") {
    auto r = run_text("domain X = affine(1|1)\ndomain Y = affine(1|1) coords [u | s]\n"
                      "morphism m : X -> Y = { u = t1^2 + th1*th1; s = t1*th1 }\nshow pullback(m, u*s)\n");
    CHECK(r.exit_code == kOk);
    CHECK(r.output ==
          "X := affine(1|1)\nY := affine(1|1) coords [u | s]\nm := { u = t1^2, s = t1*th1 }\n"
          "pullback(m, u*s) = t1^3*th1\n");

    r = run_text("domain X = affine(1|0)\nmorphism m : X -> X = { }\n");
    CHECK(r.exit_code == kUsageError);
    CHECK(r.diagnostics == "line 2, column 1: error: no value given for 't1'\n");

    r = run_text("domain X = affine(1|0)\nmorphism m : X -> X = { t1 = t1, q = 1 }\n");
    CHECK(r.diagnostics == "line 2, column 34: error: 'q' is not a coordinate of X\n");

    r = run_text("domain X = affine(1|0)\nmorphism m : X -> X = { t1 = th1 }\n");
    CHECK(r.exit_code == kUsageError);
}

TEST_CASE("bundle coordinates and Jacobians") {
    auto r = run_text("algebra L = grassmann(2)\ndomain X = affine(1|1)\nshow bundle(L, X)\n"
                      "domain Y = affine(2|0)\nmorphism f : Y -> Y = { t1 = t1*t2, t2 = t2^3 }\nshow jacobian(f)\n");
    CHECK(r.exit_code == kOk);
    CHECK(r.output.find("bundle(L, X) = fibre 3|3, total affine(4|4) coords [t1, th1_tau1, th1_tau2, t1_tau1tau2 | "
                        "th1, t1_tau1, t1_tau2, th1_tau1tau2]") != std::string::npos);
    CHECK(r.output.find("jacobian(f) = [[t2, t1], [0, 3*t2^2]]") != std::string::npos);

    r = run_text("algebra D = dual()\ndomain X = affine(1|0) field C\nshow bundle(D, X)\n");
    CHECK(r.exit_code == kKernelError);
    CHECK(r.diagnostics.find("CsRepresentabilityError") != std::string::npos);
}

TEST_CASE("json output") {
    Options o;
    o.json = true;
    auto r = run_text("algebra A = weil { even: [x]; truncate: 2 }\nshow girth(A)\nshow augmentation(A, 3/2 + x)\n", o);
    auto j = Json::parse(r.output);
    CHECK(j["schema"] == "superkernel/1");
    CHECK(j["results"].size() == 3);
    CHECK(j["results"][0]["value"]["girth"] == "2");
    CHECK(j["results"][1]["value"]["value"] == "2");
    CHECK(j["results"][2]["value"]["type"] == "scalar");
    CHECK(j["results"][2]["value"]["value"] == "3/2");
    CHECK(j["exit_code"] == 0);

    r = run_text("show nothing(1)\n", o);
    j = Json::parse(r.output);
    CHECK(j["error"]["kind"] == "ScriptError");
    CHECK(j["exit_code"] == kUsageError);
}

TEST_CASE("algebras render and parse back") {
    Rng rng(11);
    for (int i = 0; i < 60; ++i) {
        Field field = rng.coin(30) ? Field::Complex : Field::Real;
        WeilPtr a = WeilAlgebra::build(oracle::random_presentation(rng, field));
        if (rng.coin(30)) a = WeilAlgebra::tensor(a, grassmann(1, field));
        auto text = render_algebra("A", *a);
        auto env = define_all(text, Options{});
        const auto& b = env.names.at("A").as_algebra();
        CHECK_MESSAGE(canonically_isomorphic(a, b), text);
        CHECK(render_algebra("A", *b) == text);
        CHECK(b->girth() == a->girth());
    }
}

TEST_CASE("domains and morphisms render and parse back") {
    Rng rng(12);
    for (int i = 0; i < 60; ++i) {
        Field field = rng.coin(25) ? Field::Complex : Field::Real;
        auto x = random_named_domain(rng, field);
        auto y = SuperDomain(oracle::random_target(x, rng, rng.coin()).coordinates(), {},
                             rng.coin() ? x.coeff() : nullptr);
        auto m = oracle::random_morphism(x, y, rng);

        std::string text;
        if (!x.has_trivial_coeff()) text += render_algebra("C", *x.coeff()) + "\n";
        text += render_domain("X", x, "C") + "\n" + render_domain("Y", y, "C") + "\n" +
                render_morphism("m", "X", "Y", m) + "\n";
        auto env = define_all(text, Options{});
        CHECK_MESSAGE(env.names.at("X").as_domain() == x, text);
        CHECK_MESSAGE(env.names.at("Y").as_domain() == y, text);
        CHECK_MESSAGE(env.names.at("m").as_morphism() == m, text);
    }
}

TEST_CASE("runs are deterministic and single cases reproduce") {
    std::string src = "algebra D = dual()\nalgebra L = grassmann(1)\n"
                      "domain X = affine(1|1)\ndomain Y = affine(1|1)\n"
                      "morphism m : X -> Y = { t1 = t1^2 + t1*th1*th1, th1 = t1*th1 }\n"
                      "check weil-laws m with D, L count 4\ncheck girth-additivity count 30\ncheck locality L count 10\n";
    Options o;
    o.seed = 5;
    auto a = run_text(src, o);
    auto b = run_text(src, o);
    CHECK(a.exit_code == kOk);
    CHECK(a.output == b.output);
    o.json = true;
    CHECK(run_text(src, o).output == run_text(src, o).output);

    // A case run on its own sees the same random draws.
    auto one = run_text("algebra A = weil { even: [x]; odd: [y]; truncate: 3 }\ncheck locality A seed 9 case 7\n");
    CHECK(one.output.find("1 of 1 cases passed") != std::string::npos);
}

TEST_CASE("option defaults") {
    Options o;
    o.field = Field::Complex;
    auto r = run_text("algebra L = grassmann(1)\ndomain X = affine(1|0)\nshow bundle(L, X)\nshow X\n", o);
    CHECK(r.exit_code == kOk);
    CHECK(r.output.find("X = affine(1|0) field C") != std::string::npos);

    o = Options{};
    o.max_degree = 3;
    r = run_text("domain X = affine(2|0)\nspace S = subspace(X, t1^2 - t2, t1*t2)\nshow contains(S, t2^2)\n", o);
    CHECK(r.exit_code == kOk);
    CHECK(r.output.find("contains(S, t2^2) = true") != std::string::npos);
}
