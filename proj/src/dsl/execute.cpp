#include "internal.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace superkernel::dsl {

namespace {

void require_distinct(const std::vector<std::string>& even, const std::vector<std::string>& odd) {
    std::set<std::string> seen;
    for (const auto* names : {&even, &odd})
        for (const auto& n : *names)
            if (!seen.insert(n).second) throw ContextError("generator name '" + n + "' used twice");
}

WeilPtr build_weil(const Env& env, const WeilFields& w) {
    require_distinct(w.even, w.odd);
    if (*w.truncate < 0) throw TruncationError("the truncation order must be non-negative");
    WeilPresentation p;
    p.ctx = Context::make(w.even, w.odd, w.field.value_or(env.options.field));
    p.truncate = *w.truncate;
    for (const auto& r : w.relations) p.relations.push_back(parse_expression(p.ctx, r));
    return WeilAlgebra::build(p);
}

SuperDomain build_affine(const Env& env, const AffineFields& a) {
    WeilPtr coeff = a.coeff ? env.names.at(*a.coeff).as_algebra() : nullptr;
    Field field = a.field.value_or(coeff ? coeff->field() : env.options.field);
    ContextPtr ctx;
    if (a.even) {
        require_distinct(*a.even, *a.odd);
        ctx = Context::make(*a.even, *a.odd, field);
    } else {
        ctx = standard_coordinates(a.p, a.q, field);
    }
    return SuperDomain(ctx, a.box.value_or(Box{}), coeff);
}

SuperMorphism build_morphism(const Env& env, const Statement& st) {
    const auto& x = env.names.at(st.source).as_domain();
    const auto& y = env.names.at(st.target).as_domain();
    const auto& tc = *y.coordinates();
    const auto& cc = *y.coeff()->context();
    std::size_t n = tc.num_even() + tc.num_odd();
    std::vector<std::optional<Superfunction>> comps(n), images(cc.num_even() + cc.num_odd());
    for (const auto& asg : st.components) {
        auto value = Superfunction::from_combined(x, parse_expression(x.combined_context(), asg.value));
        if (auto c = tc.find(asg.target)) {
            comps[c->parity == Parity::Even ? c->index : tc.num_even() + c->index] = std::move(value);
        } else if (auto k = cc.find(asg.target)) {
            images[k->parity == Parity::Even ? k->index : cc.num_even() + k->index] = std::move(value);
        } else {
            throw ScriptError("'" + asg.target + "' is not a coordinate of " + st.target, asg.target_span);
        }
    }
    auto missing = [&](const std::vector<std::optional<Superfunction>>& v, const Context& c) -> std::string {
        for (std::size_t a = 0; a < v.size(); ++a)
            if (!v[a]) return a < c.num_even() ? c.even_names()[a] : c.odd_names()[a - c.num_even()];
        return "";
    };
    if (auto m = missing(comps, tc); !m.empty()) throw ScriptError("no value given for '" + m + "'", st.span);
    std::vector<Superfunction> cv;
    for (auto& c : comps) cv.push_back(std::move(*c));
    bool any_image = std::any_of(images.begin(), images.end(), [](const auto& v) { return v.has_value(); });
    std::optional<std::vector<Superfunction>> iv;
    if (any_image) {
        if (auto m = missing(images, cc); !m.empty())
            throw ScriptError("no value given for the coefficient generator '" + m + "'", st.span);
        iv.emplace();
        for (auto& c : images) iv->push_back(std::move(*c));
    }
    return SuperMorphism::make(x, y, std::move(cv), std::move(iv));
}

std::string check_header(const Statement& st) {
    std::string s = "check " + st.suite;
    for (const auto& a : st.suite_args) s += " " + a;
    for (std::size_t k = 0; k < st.with.size(); ++k) s += (k ? ", " : " with ") + st.with[k];
    return s;
}

/// Source text of every definition st depends on, in script order.
std::string reproduction(const Script& script, std::size_t upto, const Statement& st, std::uint64_t seed,
                         std::uint64_t index) {
    std::set<std::string> needed(st.refs.begin(), st.refs.end());
    std::vector<bool> keep(upto, false);
    for (std::size_t k = upto; k-- > 0;) {
        const auto& d = script.statements[k];
        if (d.name.empty() || !needed.count(d.name) || d.type == Statement::Type::Show) continue;
        keep[k] = true;
        needed.insert(d.refs.begin(), d.refs.end());
    }
    std::string out;
    for (std::size_t k = 0; k < upto; ++k)
        if (keep[k]) out += script.text(script.statements[k]) + "\n";
    return out + check_header(st) + " seed " + std::to_string(seed) + " case " + std::to_string(index) + "\n";
}

struct CaseFailure {
    std::uint64_t index;
    std::string message;
};

std::string location(const Span& s) {
    return "line " + std::to_string(s.line) + ", column " + std::to_string(s.column);
}

const char* statement_word(Statement::Type t) {
    switch (t) {
        case Statement::Type::Algebra: return "algebra";
        case Statement::Type::Domain: return "domain";
        case Statement::Type::Morphism: return "morphism";
        case Statement::Type::Space: return "space";
        case Statement::Type::Show: return "show";
        case Statement::Type::Check: return "check";
    }
    return "?";
}

}  // namespace

const Value& define(Env& env, const Statement& st) {
    Value v = Value::boolean(false);
    switch (st.type) {
        case Statement::Type::Algebra:
            v = st.weil ? Value::algebra(build_weil(env, *st.weil)) : evaluate(env, *st.call);
            break;
        case Statement::Type::Domain:
            v = st.affine ? Value::domain(build_affine(env, *st.affine)) : evaluate(env, *st.call);
            break;
        case Statement::Type::Morphism:
            v = st.call ? evaluate(env, *st.call) : Value::morphism(build_morphism(env, st));
            break;
        case Statement::Type::Space: v = evaluate(env, *st.call); break;
        default: throw ContextError("not a definition");
    }
    return env.names.insert_or_assign(st.name, std::move(v)).first->second;
}

Report execute(const Script& script, const Options& options) {
    Report report;
    Env env{options, {}};
    std::ostringstream text;
    Json doc;
    doc["schema"] = "superkernel/1";
    doc["seed"] = std::to_string(options.seed);
    doc["field"] = to_string(options.field);
    doc["results"] = Json::array();
    bool failed_check = false;

    for (std::size_t si = 0; si < script.statements.size(); ++si) {
        const auto& st = script.statements[si];
        Json entry;
        entry["line"] = st.span.line;
        entry["statement"] = statement_word(st.type);
        try {
            if (st.type == Statement::Type::Show) {
                Value v = st.call ? evaluate(env, *st.call) : env.names.at(st.name);
                std::string what = st.call ? st.call->canonical() : st.name;
                text << what << " = " << render_text(v) << "\n";
                entry["expression"] = what;
                entry["value"] = render_json(v);
            } else if (st.type == Statement::Type::Check) {
                const SuiteSpec& suite = *find_suite(st.suite);
                std::vector<Value> args, with;
                for (const auto& a : st.suite_args) args.push_back(env.names.at(a));
                for (const auto& a : st.with) with.push_back(env.names.at(a));
                std::uint64_t seed = st.seed.value_or(options.seed);
                bool fixed = suite.args_optional && !st.suite_args.empty();
                std::uint64_t count = st.count.value_or(fixed ? 1 : suite.default_count);
                std::vector<std::uint64_t> cases;
                if (st.case_index) cases.push_back(*st.case_index);
                else
                    for (std::uint64_t i = 0; i < count; ++i) cases.push_back(i);
                std::vector<CaseFailure> failures;
                for (auto i : cases) {
                    Rng rng(Rng::derive(seed, i));
                    try {
                        if (auto msg = suite.run(env, args, with, rng)) failures.push_back({i, *msg});
                    } catch (const KernelError& e) {
                        failures.push_back({i, e.kind() + ": " + e.what()});
                    }
                }
                std::size_t passed = cases.size() - failures.size();
                std::string header = check_header(st);
                entry["check"] = header;
                entry["seed"] = std::to_string(seed);
                entry["cases"] = cases.size();
                entry["passed"] = passed;
                entry["failures"] = Json::array();
                if (failures.empty()) {
                    text << header << ": " << passed << " of " << cases.size() << " cases passed\n";
                } else {
                    failed_check = true;
                    text << header << ": FAILED, " << passed << " of " << cases.size() << " cases passed\n";
                    for (std::size_t k = 0; k < failures.size(); ++k) {
                        const auto& f = failures[k];
                        std::string repro = reproduction(script, si, st, seed, f.index);
                        entry["failures"].push_back(
                            {{"case", f.index}, {"message", f.message}, {"reproduce", repro}});
                        if (k >= 3) continue;
                        text << "  case " << f.index << ": " << f.message << "\n";
                        if (k == 0) {
                            text << "  reproduce with:\n";
                            std::istringstream lines(repro);
                            for (std::string line; std::getline(lines, line);) text << "    " << line << "\n";
                        }
                    }
                    if (failures.size() > 3) text << "  (" << failures.size() - 3 << " more)\n";
                }
            } else {
                const Value& v = define(env, st);
                text << st.name << " := " << render_text(v) << "\n";
                entry["name"] = st.name;
                entry["value"] = render_json(v);
            }
        } catch (const ScriptError& e) {
            report.exit_code = kUsageError;
            report.diagnostics += location(e.span()) + ": error: " + e.what() + "\n";
            doc["error"] = {{"kind", "ScriptError"}, {"message", e.what()}, {"line", e.span().line},
                            {"column", e.span().column}};
            break;
        } catch (const KernelError& e) {
            report.exit_code = kKernelError;
            report.diagnostics += location(st.span) + ": " + e.kind() + ": " + e.what() + "\n";
            doc["error"] = {{"kind", e.kind()}, {"message", e.what()}, {"line", st.span.line},
                            {"column", st.span.column}};
            break;
        }
        doc["results"].push_back(std::move(entry));
    }
    if (report.exit_code == kOk && failed_check) report.exit_code = kCheckFailed;
    doc["exit_code"] = report.exit_code;
    report.output = options.json ? doc.dump(2) + "\n" : text.str();
    return report;
}

Report run(std::string_view source, const Options& options) {
    Script script;
    try {
        script = parse(source);
    } catch (const ScriptError& e) {
        Report r;
        r.exit_code = kUsageError;
        r.diagnostics = location(e.span()) + ": error: " + e.what() + "\n";
        if (options.json) {
            Json doc;
            doc["schema"] = "superkernel/1";
            doc["error"] = {{"kind", "ScriptError"}, {"message", e.what()}, {"line", e.span().line},
                            {"column", e.span().column}};
            doc["exit_code"] = r.exit_code;
            r.output = doc.dump(2) + "\n";
        }
        return r;
    }
    return execute(script, options);
}

}  // namespace superkernel::dsl
