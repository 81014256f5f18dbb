#include "internal.hpp"

#include "superkernel/functors.hpp"
#include "superkernel/limits.hpp"
#include "superkernel/parse.hpp"

#include <algorithm>

namespace superkernel::dsl {

namespace {

using P = Param;
using Args = std::vector<ArgValue>;

const WeilPtr& alg(const Args& a, std::size_t k) { return a[k].value->as_algebra(); }
const SuperDomain& dom(const Args& a, std::size_t k) { return a[k].value->as_domain(); }
const SuperMorphism& mor(const Args& a, std::size_t k) { return a[k].value->as_morphism(); }
const FinSuperspace& spc(const Args& a, std::size_t k) { return a[k].value->as_space(); }

Superfunction function_on(const SuperDomain& x, const Arg& arg) {
    return Superfunction::from_combined(x, parse_expression(x.combined_context(), arg));
}

AlgebraElement element_of(const WeilPtr& a, const Arg& arg) { return a->element(parse_expression(a->context(), arg)); }

std::string coordinate_name(const Context& c, std::size_t a) {
    return a < c.num_even() ? c.even_names()[a] : c.odd_names()[a - c.num_even()];
}

std::string box_text(const Box& box) {
    std::string s = "[";
    for (std::size_t k = 0; k < box.size(); ++k) s += (k ? ", " : "") + box[k].to_string();
    return s + "]";
}

int to_int(const ArgValue& a, const char* what, long long lo, long long hi) {
    if (a.integer < lo || a.integer > hi)
        throw ScriptError(std::string(what) + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]",
                          a.arg->span);
    return static_cast<int>(a.integer);
}

std::vector<std::string> jacobian_rows(const SuperMorphism& psi) {
    std::vector<std::string> rows;
    for (const auto& r : tangent_jacobian(psi)) {
        std::string row = "[";
        for (std::size_t b = 0; b < r.size(); ++b) row += (b ? ", " : "") + r[b].to_string();
        rows.push_back(row + "]");
    }
    return rows;
}

std::vector<std::string> decomposition_rows(const SuperMorphism& phi, const WeilPtr& a) {
    auto d = decompose_weil(phi, a);
    const auto& tc = *phi.target().coordinates();
    std::vector<std::string> rows;
    for (std::size_t k = 0; k < d.table.size(); ++k) {
        std::string name = coordinate_name(tc, k);
        rows.push_back(name + "[1] = " + d.base.component(k).to_string());
        for (std::size_t b = 1; b < d.algebra->dim(); ++b)
            rows.push_back(name + "[" + d.algebra->basis_name(b) + "] = " + d.table[k][b - 1].to_string());
    }
    return rows;
}

std::vector<CallSpec> build_table() {
    std::vector<CallSpec> t;
    auto add = [&](const char* name, std::vector<P> params, Kind result,
                   std::function<Value(Env&, const Args&)> fn, bool variadic = false) {
        t.push_back(CallSpec{name, std::move(params), variadic, result, std::move(fn)});
    };

    // Algebras.
    add("ground", {}, Kind::Algebra, [](Env& e, const Args&) { return Value::algebra(WeilAlgebra::ground(e.options.field)); });
    add("dual", {}, Kind::Algebra, [](Env& e, const Args&) { return Value::algebra(dual_numbers(e.options.field)); });
    add("superdual", {}, Kind::Algebra,
        [](Env& e, const Args&) { return Value::algebra(super_dual_numbers(e.options.field)); });
    add("grassmann", {P::Int}, Kind::Algebra, [](Env& e, const Args& a) {
        return Value::algebra(grassmann(to_int(a[0], "grassmann: n", 0, kMaxOddGenerators), e.options.field));
    });
    add("multijet", {P::Int, P::Int, P::Int}, Kind::Algebra, [](Env& e, const Args& a) {
        return Value::algebra(multijet(to_int(a[0], "multijet: p", 0, 16), to_int(a[1], "multijet: q", 0, kMaxOddGenerators),
                                       to_int(a[2], "multijet: order", 0, 64), e.options.field));
    });
    add("tensor", {P::Algebra, P::Algebra}, Kind::Algebra,
        [](Env&, const Args& a) { return Value::algebra(WeilAlgebra::tensor(alg(a, 0), alg(a, 1))); });
    add("complexify", {P::Algebra}, Kind::Algebra,
        [](Env&, const Args& a) { return Value::algebra(complexify(alg(a, 0))); });

    // The three derived objects, for every kind they apply to.
    auto derived = [&](const char* name, DerivedAlgebra (*fa)(const WeilPtr&), DerivedDomain (*fd)(const SuperDomain&),
                       SuperMorphism (*fm)(const SuperMorphism&), FinSuperspace (*fs)(const FinSuperspace&)) {
        add(name, {P::Algebra}, Kind::Algebra, [fa](Env&, const Args& a) { return Value::algebra(fa(alg(a, 0)).algebra); });
        add(name, {P::Domain}, Kind::Domain, [fd](Env&, const Args& a) { return Value::domain(fd(dom(a, 0)).domain); });
        add(name, {P::Morphism}, Kind::Morphism, [fm](Env&, const Args& a) { return Value::morphism(fm(mor(a, 0))); });
        add(name, {P::Space}, Kind::Space, [fs](Env&, const Args& a) { return Value::space(fs(spc(a, 0))); });
    };
    derived("reduction", reduction, reduction, reduction, reduction);
    derived("body", body, body, body, body);
    derived("even_part", even_part, even_part, even_part, even_part);
    add("canonical_reduction", {P::Domain}, Kind::Morphism,
        [](Env&, const Args& a) { return Value::morphism(reduction(dom(a, 0)).canonical); });
    add("canonical_body", {P::Domain}, Kind::Morphism,
        [](Env&, const Args& a) { return Value::morphism(body(dom(a, 0)).canonical); });
    add("canonical_even", {P::Domain}, Kind::Morphism,
        [](Env&, const Args& a) { return Value::morphism(even_part(dom(a, 0)).canonical); });

    // Queries on algebras.
    add("girth", {P::Algebra}, Kind::Integer, [](Env&, const Args& a) { return Value::integer(alg(a, 0)->girth()); });
    add("girth", {P::Space}, Kind::Text, [](Env&, const Args& a) {
        auto g = girth_of_embedding(subspace_embedding(spc(a, 0)));
        return Value::text(g.girth ? std::to_string(*g.girth) : "not nilpotent");
    });
    add("dim", {P::Algebra}, Kind::Text, [](Env&, const Args& a) { return Value::text(alg(a, 0)->graded_dim()); });
    add("dim", {P::Domain}, Kind::Text, [](Env&, const Args& a) { return Value::text(dom(a, 0).dim_string()); });
    add("basis", {P::Algebra}, Kind::List, [](Env&, const Args& a) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < alg(a, 0)->dim(); ++i) names.push_back(alg(a, 0)->basis_name(i));
        return Value::list(names);
    });
    add("normal", {P::Algebra, P::Expr}, Kind::Element,
        [](Env&, const Args& a) { return Value::element(element_of(alg(a, 0), *a[1].arg)); });
    add("normal", {P::Space, P::Expr}, Kind::Function, [](Env&, const Args& a) {
        const auto& y = spc(a, 0);
        return Value::function(y.normal_form(function_on(y.ambient(), *a[1].arg)));
    });
    add("invert", {P::Algebra, P::Expr}, Kind::Element,
        [](Env&, const Args& a) { return Value::element(invert(element_of(alg(a, 0), *a[1].arg))); });
    add("augmentation", {P::Algebra, P::Expr}, Kind::Scalar,
        [](Env&, const Args& a) { return Value::scalar(element_of(alg(a, 0), *a[1].arg).augmentation()); });
    add("isomorphic", {P::Algebra, P::Algebra}, Kind::Bool,
        [](Env&, const Args& a) { return Value::boolean(canonically_isomorphic(alg(a, 0), alg(a, 1))); });
    add("isomorphic", {P::Domain, P::Domain}, Kind::Bool,
        [](Env&, const Args& a) { return Value::boolean(canonically_isomorphic(dom(a, 0), dom(a, 1))); });
    add("isomorphic", {P::Space, P::Space}, Kind::Bool,
        [](Env&, const Args& a) { return Value::boolean(canonically_isomorphic(spc(a, 0), spc(a, 1))); });

    // Domains and bundles.
    add("product", {P::Domain, P::Domain}, Kind::Domain,
        [](Env&, const Args& a) { return Value::domain(product(dom(a, 0), dom(a, 1))); });
    add("thicken", {P::Domain, P::Algebra}, Kind::Domain,
        [](Env&, const Args& a) { return Value::domain(weil_thicken(dom(a, 0), alg(a, 1))); });
    add("bundle", {P::Algebra, P::Domain}, Kind::Bundle,
        [](Env&, const Args& a) { return Value::bundle(apply_object(alg(a, 0), dom(a, 1))); });
    add("tangent", {P::Domain}, Kind::Bundle, [](Env&, const Args& a) { return Value::bundle(tangent(dom(a, 0))); });
    add("function", {P::Domain, P::Expr}, Kind::Function,
        [](Env&, const Args& a) { return Value::function(function_on(dom(a, 0), *a[1].arg)); });
    add("prolong", {P::Algebra, P::Domain, P::Expr}, Kind::List, [](Env&, const Args& a) {
        auto b = apply_object(alg(a, 0), dom(a, 1));
        auto parts = prolong(b, function_on(b.base, *a[2].arg));
        std::vector<std::string> rows;
        for (std::size_t k = 0; k < parts.size(); ++k)
            rows.push_back(b.algebra->basis_name(k) + ": " + parts[k].to_string());
        return Value::list(rows);
    });

    // Morphisms.
    add("identity", {P::Domain}, Kind::Morphism,
        [](Env&, const Args& a) { return Value::morphism(SuperMorphism::identity(dom(a, 0))); });
    add("compose", {P::Morphism, P::Morphism}, Kind::Morphism,
        [](Env&, const Args& a) { return Value::morphism(compose(mor(a, 0), mor(a, 1))); });
    add("prolong", {P::Algebra, P::Morphism}, Kind::Morphism,
        [](Env&, const Args& a) { return Value::morphism(apply_morphism(alg(a, 0), mor(a, 1))); });
    add("projection", {P::Algebra, P::Domain}, Kind::Morphism,
        [](Env&, const Args& a) { return Value::morphism(apply_object(alg(a, 0), dom(a, 1)).projection); });
    add("section", {P::Algebra, P::Domain}, Kind::Morphism,
        [](Env&, const Args& a) { return Value::morphism(apply_object(alg(a, 0), dom(a, 1)).section); });
    add("compose_iso", {P::Algebra, P::Algebra, P::Domain}, Kind::Morphism,
        [](Env&, const Args& a) { return Value::morphism(compose_iso(alg(a, 0), alg(a, 1), dom(a, 2)).forward); });
    add("compose_iso_inverse", {P::Algebra, P::Algebra, P::Domain}, Kind::Morphism,
        [](Env&, const Args& a) { return Value::morphism(compose_iso(alg(a, 0), alg(a, 1), dom(a, 2)).backward); });
    add("product_iso", {P::Algebra, P::Domain, P::Domain}, Kind::Morphism,
        [](Env&, const Args& a) { return Value::morphism(product_iso(alg(a, 0), dom(a, 1), dom(a, 2)).forward); });
    add("product_iso_inverse", {P::Algebra, P::Domain, P::Domain}, Kind::Morphism,
        [](Env&, const Args& a) { return Value::morphism(product_iso(alg(a, 0), dom(a, 1), dom(a, 2)).backward); });
    add("jacobian", {P::Morphism}, Kind::List, [](Env&, const Args& a) { return Value::list(jacobian_rows(mor(a, 0))); });
    add("pullback", {P::Morphism, P::Expr}, Kind::Function, [](Env&, const Args& a) {
        const auto& m = mor(a, 0);
        return Value::function(m.pullback(function_on(m.target(), *a[1].arg)));
    });
    add("verdict", {P::Morphism}, Kind::Text, [](Env&, const Args& a) { return Value::text(to_string(mor(a, 0).verdict())); });
    add("equal", {P::Morphism, P::Morphism}, Kind::Bool,
        [](Env&, const Args& a) { return Value::boolean(mor(a, 0) == mor(a, 1)); });
    add("decompose", {P::Morphism, P::Algebra}, Kind::List,
        [](Env&, const Args& a) { return Value::list(decomposition_rows(mor(a, 0), alg(a, 1))); });

    // Subspaces.
    add("subspace", {P::Domain, P::Expr}, Kind::Space, [](Env& e, const Args& a) {
        const auto& x = dom(a, 0);
        std::vector<Superfunction> gens;
        for (std::size_t k = 1; k < a.size(); ++k) gens.push_back(function_on(x, *a[k].arg));
        return Value::space(FinSuperspace(x, std::move(gens), e.options.max_degree));
    }, true);
    add("equalizer", {P::Morphism, P::Morphism}, Kind::Space,
        [](Env&, const Args& a) { return Value::space(equalizer(mor(a, 0), mor(a, 1)).image); });
    add("neighbourhood", {P::Space, P::Int}, Kind::Space, [](Env&, const Args& a) {
        return Value::space(infinitesimal_neighbourhood(subspace_embedding(spc(a, 0)), to_int(a[1], "neighbourhood: order", 0, 64)));
    });
    add("inclusion", {P::Space}, Kind::Morphism,
        [](Env&, const Args& a) { return Value::morphism(SuperMorphism::inclusion(spc(a, 0))); });
    add("contains", {P::Space, P::Expr}, Kind::Bool, [](Env&, const Args& a) {
        const auto& y = spc(a, 0);
        return Value::boolean(y.contains(function_on(y.ambient(), *a[1].arg)));
    });
    add("support", {P::Space}, Kind::List, [](Env&, const Args& a) {
        std::vector<std::string> boxes;
        for (const auto& b : spc(a, 0).support()) boxes.push_back(box_text(b));
        return Value::list(boxes);
    });
    return t;
}

}  // namespace

std::vector<std::vector<SuperPolynomial>> tangent_jacobian(const SuperMorphism& psi) {
    const auto& x = psi.source();
    const auto& y = psi.target();
    if (x.q() || y.q() || !x.has_trivial_coeff() || !y.has_trivial_coeff() || psi.source_space())
        throw DomainError("jacobian: only for purely even domains without coefficients");
    auto d = dual_numbers(x.field());
    auto tx = apply_object(d, x);
    auto ty = apply_object(d, y);
    auto tpsi = apply_morphism(d, psi);
    std::vector<std::vector<SuperPolynomial>> j;
    for (std::size_t a = 0; a < y.p(); ++a) {
        const auto& comp = tpsi.component(ty.slot[a][1]).part(0);
        auto& row = j.emplace_back();
        for (std::size_t b = 0; b < x.p(); ++b) {
            SuperPolynomial entry(x.coordinates());
            for (const auto& [m, c] : comp.terms()) {
                if (m.exps[tx.slot[b][1]] != 1) continue;
                Monomial base;
                base.exps.assign(m.exps.begin(), m.exps.begin() + static_cast<std::ptrdiff_t>(x.p()));
                entry.add_term(base, c);
            }
            row.push_back(entry);
        }
    }
    return j;
}

const std::vector<CallSpec>& call_table() {
    static const std::vector<CallSpec> table = build_table();
    return table;
}

bool is_call_name(const std::string& name) {
    const auto& t = call_table();
    return std::any_of(t.begin(), t.end(), [&](const CallSpec& s) { return name == s.name; });
}

SuperPolynomial parse_expression(const ContextPtr& ctx, const Arg& arg) {
    try {
        return parse_polynomial(ctx, arg.text);
    } catch (const SyntaxError& e) {
        Span at = arg.span;
        std::size_t off = std::min(e.offset(), arg.text.size());
        at.offset += off;
        at.length = off < arg.text.size() ? 1 : 0;
        for (std::size_t k = 0; k < off; ++k) {
            if (arg.text[k] == '\n') {
                ++at.line;
                at.column = 1;
            } else {
                ++at.column;
            }
        }
        throw ScriptError(e.what(), at);
    }
}

Value evaluate(Env& env, const Call& call) {
    const CallSpec& s = *call.spec;
    std::vector<ArgValue> args;
    for (std::size_t k = 0; k < call.args.size(); ++k) {
        const Arg& arg = call.args[k];
        Param p = s.params[std::min(k, s.params.size() - 1)];
        ArgValue v;
        v.arg = &arg;
        if (arg.call) {
            v.value = evaluate(env, *arg.call);
            if (p == Param::Int) v.integer = std::get<long long>(v.value->data);
        } else if (p == Param::Int) {
            v.integer = std::stoll(arg.text);
        } else if (p != Param::Expr) {
            v.value = env.names.at(arg.text);
        }
        args.push_back(std::move(v));
    }
    return s.fn(env, args);
}

}  // namespace superkernel::dsl
