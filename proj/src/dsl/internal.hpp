#pragma once

#include "superkernel/dsl.hpp"
#include "superkernel/errors.hpp"
#include "superkernel/subspace.hpp"
#include "superkernel/weil_functor.hpp"

#include "json.hpp"

#include <functional>
#include <map>
#include <variant>

namespace superkernel::dsl {

using Json = nlohmann::ordered_json;

enum class Param { Algebra, Domain, Morphism, Space, Int, Expr };

/// Does a value of kind k fill a parameter of kind p?
bool accepts(Param p, Kind k);
const char* to_string(Param p) noexcept;

struct Value {
    Kind kind;
    std::variant<WeilPtr, SuperDomain, SuperMorphism, FinSuperspace, WeilBundle, AlgebraElement, Superfunction, Scalar,
                 long long, std::string, bool, std::vector<std::string>>
        data;

    static Value algebra(WeilPtr a) { return {Kind::Algebra, std::move(a)}; }
    static Value domain(SuperDomain x) { return {Kind::Domain, std::move(x)}; }
    static Value morphism(SuperMorphism m) { return {Kind::Morphism, std::move(m)}; }
    static Value space(FinSuperspace y) { return {Kind::Space, std::move(y)}; }
    static Value bundle(WeilBundle b) { return {Kind::Bundle, std::move(b)}; }
    static Value element(AlgebraElement e) { return {Kind::Element, std::move(e)}; }
    static Value function(Superfunction f) { return {Kind::Function, std::move(f)}; }
    static Value scalar(Scalar s) { return {Kind::Scalar, std::move(s)}; }
    static Value integer(long long n) { return {Kind::Integer, n}; }
    static Value text(std::string s) { return {Kind::Text, std::move(s)}; }
    static Value boolean(bool b) { return {Kind::Bool, b}; }
    static Value list(std::vector<std::string> v) { return {Kind::List, std::move(v)}; }

    const WeilPtr& as_algebra() const { return std::get<WeilPtr>(data); }
    /// Bundles stand for their total space.
    const SuperDomain& as_domain() const;
    const SuperMorphism& as_morphism() const { return std::get<SuperMorphism>(data); }
    const FinSuperspace& as_space() const { return std::get<FinSuperspace>(data); }
    const WeilBundle& as_bundle() const { return std::get<WeilBundle>(data); }
};

std::string render_text(const Value& v);
Json render_json(const Value& v);
std::string render_weil_body(const WeilAlgebra& a);

struct Env {
    const Options& options;
    std::map<std::string, Value> names;
};

/// Runs a definition statement (algebra, domain, morphism or space) and
/// binds its name.
const Value& define(Env& env, const Statement& st);

/// An evaluated argument: the value for name-like parameters, the raw
/// text (with its span) for expressions and integers.
struct ArgValue {
    std::optional<Value> value;
    const Arg* arg = nullptr;
    long long integer = 0;
};

struct CallSpec {
    const char* name;
    std::vector<Param> params;
    /// The last parameter may repeat (zero or more times).
    bool variadic;
    Kind result;
    std::function<Value(Env&, const std::vector<ArgValue>&)> fn;
};

const std::vector<CallSpec>& call_table();
bool is_call_name(const std::string& name);

Value evaluate(Env& env, const Call& call);

/// Parses an expression argument, reporting syntax errors at their place in
/// the script.
SuperPolynomial parse_expression(const ContextPtr& ctx, const Arg& arg);

/// d psi^#(y_a) / d x_b for purely even domains, read off the tangent
/// prolongation: the fibre component of T psi at y_a is sum_b J_ab x_b'.
std::vector<std::vector<SuperPolynomial>> tangent_jacobian(const SuperMorphism& psi);

struct SuiteSpec {
    const char* name;
    std::vector<Param> args;
    /// Kind of the names after "with" (none when the suite takes no list).
    std::optional<Param> with;
    std::size_t min_with;
    /// The positional arguments may be left out altogether.
    bool args_optional;
    std::uint64_t default_count;
    /// One case; an error message on failure.
    std::function<std::optional<std::string>(Env&, const std::vector<Value>& args, const std::vector<Value>& with,
                                             Rng& rng)>
        run;
};

const std::vector<SuiteSpec>& suite_table();
const SuiteSpec* find_suite(const std::string& name);

}  // namespace superkernel::dsl
