#include "internal.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace superkernel::dsl {

const char* to_string(Kind k) noexcept {
    switch (k) {
        case Kind::Algebra: return "algebra";
        case Kind::Domain: return "domain";
        case Kind::Morphism: return "morphism";
        case Kind::Space: return "space";
        case Kind::Bundle: return "bundle";
        case Kind::Element: return "element";
        case Kind::Function: return "function";
        case Kind::Scalar: return "scalar";
        case Kind::Integer: return "integer";
        case Kind::Text: return "text";
        case Kind::Bool: return "bool";
        case Kind::List: return "list";
    }
    return "?";
}

const char* to_string(Param p) noexcept {
    switch (p) {
        case Param::Algebra: return "algebra";
        case Param::Domain: return "domain";
        case Param::Morphism: return "morphism";
        case Param::Space: return "space";
        case Param::Int: return "integer";
        case Param::Expr: return "expression";
    }
    return "?";
}

bool accepts(Param p, Kind k) {
    switch (p) {
        case Param::Algebra: return k == Kind::Algebra;
        case Param::Domain: return k == Kind::Domain || k == Kind::Bundle;
        case Param::Morphism: return k == Kind::Morphism;
        case Param::Space: return k == Kind::Space;
        case Param::Int: return k == Kind::Integer;
        case Param::Expr: return false;
    }
    return false;
}

std::string Call::canonical() const {
    std::string s = name + "(";
    for (std::size_t k = 0; k < args.size(); ++k) {
        if (k) s += ", ";
        s += args[k].call ? args[k].call->canonical() : args[k].text;
    }
    return s + ")";
}

namespace {

const std::set<std::string> kKeywords{"algebra", "domain", "morphism", "space", "show", "check"};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool is_identifier(const std::string& s) {
    return !s.empty() && is_ident_start(s[0]) && std::all_of(s.begin(), s.end(), is_ident_char);
}

bool is_integer(const std::string& s) {
    std::size_t k = s[0] == '-' ? 1 : 0;
    return s.size() > k && std::all_of(s.begin() + static_cast<std::ptrdiff_t>(k), s.end(),
                                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {
        line_starts_.push_back(0);
        for (std::size_t k = 0; k < src.size(); ++k)
            if (src[k] == '\n') line_starts_.push_back(k + 1);
    }

    Script run() {
        Script script;
        script.source = std::string(src_);
        for (skip(); pos_ < src_.size(); skip()) {
            if (src_[pos_] == ';') {
                ++pos_;
                continue;
            }
            script.statements.push_back(statement());
        }
        return script;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    std::vector<std::size_t> line_starts_;
    std::map<std::string, Kind> symbols_;

    Span span(std::size_t from, std::size_t to) const {
        auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), from);
        std::size_t line = static_cast<std::size_t>(it - line_starts_.begin());
        return Span{from, to - from, line, from - line_starts_[line - 1] + 1};
    }

    /// End of from..to without trailing blanks and comments.
    std::size_t trimmed_end(std::size_t from, std::size_t to) const {
        for (;;) {
            while (to > from && std::isspace(static_cast<unsigned char>(src_[to - 1]))) --to;
            std::size_t line = src_.rfind('\n', to ? to - 1 : 0);
            line = (line == std::string_view::npos || line < from) ? from : line + 1;
            std::size_t hash = src_.substr(line, to - line).find('#');
            if (hash == std::string_view::npos) return to;
            to = line + hash;
        }
    }

    [[noreturn]] void fail(const std::string& what, std::size_t at, std::size_t len = 1) const {
        throw ScriptError(what, span(at, std::min(at + len, src_.size())));
    }

    void skip() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    bool at(char c) {
        skip();
        return pos_ < src_.size() && src_[pos_] == c;
    }

    bool accept(char c) {
        if (!at(c)) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= src_.size()) fail(std::string("expected '") + c + "' before end of input", pos_, 0);
            fail(std::string("expected '") + c + "'", pos_);
        }
    }

    bool at_ident() {
        skip();
        return pos_ < src_.size() && is_ident_start(src_[pos_]);
    }

    std::string peek_ident() {
        if (!at_ident()) return "";
        std::size_t k = pos_;
        while (k < src_.size() && is_ident_char(src_[k])) ++k;
        return std::string(src_.substr(pos_, k - pos_));
    }

    std::string ident(const char* what) {
        if (!at_ident()) fail(std::string("expected ") + what, pos_);
        std::string s = peek_ident();
        pos_ += s.size();
        return s;
    }

    long long integer(const char* what) {
        skip();
        std::size_t from = pos_;
        if (pos_ < src_.size() && src_[pos_] == '-') ++pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        std::string s(src_.substr(from, pos_ - from));
        if (!is_integer(s)) fail(std::string("expected ") + what, from);
        if (s.size() > 18) fail("integer too large", from, s.size());
        return std::stoll(s);
    }

    /// Raw text up to a top-level character from stops.
    std::pair<std::string, Span> raw(const char* stops) {
        skip();
        std::size_t from = pos_;
        int depth = 0;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (depth == 0 && std::string_view(stops).find(c) != std::string_view::npos) break;
            if (c == '(' || c == '[' || c == '{') ++depth;
            if (c == ')' || c == ']' || c == '}') {
                if (depth == 0) fail(std::string("unbalanced '") + c + "'", pos_);
                --depth;
            }
            ++pos_;
        }
        std::size_t to = pos_;
        while (to > from && std::isspace(static_cast<unsigned char>(src_[to - 1]))) --to;
        if (to == from) fail("expected an expression", from);
        return {std::string(src_.substr(from, to - from)), span(from, to)};
    }

    std::string new_name() {
        std::size_t at = (skip(), pos_);
        std::string name = ident("a name");
        if (kKeywords.count(name)) fail("'" + name + "' is a keyword", at, name.size());
        if (symbols_.count(name)) fail("'" + name + "' is already defined", at, name.size());
        return name;
    }

    Kind lookup(const std::string& name, std::size_t at) {
        auto it = symbols_.find(name);
        if (it == symbols_.end()) fail("undefined name '" + name + "'", at, name.size());
        return it->second;
    }

    // ------------------------------------------------------------------

    Call call(std::vector<std::string>& refs) {
        skip();
        std::size_t from = pos_;
        Call c;
        c.name = ident("a call");
        if (!is_call_name(c.name)) fail("unknown operation '" + c.name + "'", from, c.name.size());
        expect('(');
        if (!accept(')')) {
            do {
                skip();
                Arg a;
                std::string head = peek_ident();
                std::size_t save = pos_;
                if (!head.empty() && is_call_name(head)) {
                    pos_ += head.size();
                    bool nested = at('(');
                    pos_ = save;
                    if (nested) {
                        a.call = std::make_shared<Call>(call(refs));
                        a.span = a.call->span;
                        a.text = std::string(src_.substr(a.span.offset, a.span.length));
                        if (!at(',') && !at(')')) fail("unexpected text after call", pos_);
                        c.args.push_back(std::move(a));
                        continue;
                    }
                }
                auto [text, sp] = raw(",)");
                a.text = std::move(text);
                a.span = sp;
                c.args.push_back(std::move(a));
            } while (accept(','));
            expect(')');
        }
        c.span = span(from, pos_);
        resolve(c, refs);
        return c;
    }

    bool fits(const CallSpec& s, const Call& c) const {
        std::size_t n = c.args.size();
        if (s.variadic ? n + 1 < s.params.size() : n != s.params.size()) return false;
        for (std::size_t k = 0; k < n; ++k) {
            Param p = s.params[std::min(k, s.params.size() - 1)];
            const Arg& a = c.args[k];
            if (a.call) {
                if (!accepts(p, a.call->spec->result)) return false;
            } else if (p == Param::Expr) {
                continue;
            } else if (p == Param::Int) {
                if (!is_integer(a.text)) return false;
            } else {
                auto it = symbols_.find(a.text);
                if (it == symbols_.end() || !accepts(p, it->second)) return false;
            }
        }
        return true;
    }

    void resolve(Call& c, std::vector<std::string>& refs) {
        for (const auto& s : call_table())
            if (c.name == s.name && fits(s, c)) {
                c.spec = &s;
                break;
            }
        if (!c.spec) {
            for (std::size_t k = 0; k < c.args.size(); ++k) {
                const Arg& a = c.args[k];
                if (a.call || !is_identifier(a.text) || symbols_.count(a.text)) continue;
                for (const auto& s : call_table())
                    if (c.name == s.name && !s.params.empty() &&
                        s.params[std::min(k, s.params.size() - 1)] != Param::Expr &&
                        s.params[std::min(k, s.params.size() - 1)] != Param::Int)
                        fail("undefined name '" + a.text + "'", a.span.offset, a.span.length);
            }
            std::string got;
            for (const auto& a : c.args) {
                if (!got.empty()) got += ", ";
                if (a.call) got += to_string(a.call->spec->result);
                else if (symbols_.count(a.text)) got += to_string(symbols_.at(a.text));
                else got += is_integer(a.text) ? "integer" : "expression";
            }
            fail("no form of '" + c.name + "' takes (" + got + ")", c.span.offset, c.span.length);
        }
        for (std::size_t k = 0; k < c.args.size(); ++k) {
            Param p = c.spec->params[std::min(k, c.spec->params.size() - 1)];
            if (!c.args[k].call && p != Param::Expr && p != Param::Int) refs.push_back(c.args[k].text);
        }
    }

    // ------------------------------------------------------------------

    std::vector<std::string> name_list(bool allow_bar, std::vector<std::string>* after_bar) {
        std::vector<std::string> out;
        expect('[');
        if (accept(']')) return out;
        std::vector<std::string>* cur = &out;
        if (allow_bar && accept('|')) {
            cur = after_bar;
            if (accept(']')) return out;
        }
        for (;;) {
            cur->push_back(ident("a generator name"));
            if (accept(',')) continue;
            if (allow_bar && cur == &out && accept('|')) {
                cur = after_bar;
                if (at(']')) break;
                continue;
            }
            break;
        }
        expect(']');
        return out;
    }

    Field field_name() {
        std::size_t at = (skip(), pos_);
        std::string f = ident("R or C");
        if (f == "R") return Field::Real;
        if (f == "C") return Field::Complex;
        fail("field must be R or C", at, f.size());
    }

    WeilFields weil_fields() {
        WeilFields w;
        expect('{');
        std::set<std::string> seen;
        while (!accept('}')) {
            std::size_t key_at = (skip(), pos_);
            std::string key = ident("a field name");
            if (!seen.insert(key).second) fail("field '" + key + "' given twice", key_at, key.size());
            expect(':');
            if (key == "even") w.even = name_list(false, nullptr);
            else if (key == "odd") w.odd = name_list(false, nullptr);
            else if (key == "truncate") w.truncate = static_cast<int>(integer("a truncation order"));
            else if (key == "field") w.field = field_name();
            else if (key == "relations") {
                expect('[');
                if (!accept(']')) {
                    do {
                        auto [text, sp] = raw(",]");
                        w.relations.push_back(Arg{text, sp, nullptr});
                    } while (accept(','));
                    expect(']');
                }
            } else {
                fail("unknown field '" + key + "' (expected even, odd, truncate, relations or field)", key_at, key.size());
            }
            if (!accept(';') && !at('}')) fail("expected ';' or '}'", pos_);
        }
        if (!w.truncate) fail("weil algebra needs a truncation order", pos_ - 1);
        return w;
    }

    mpq_class rational_bound(bool& infinite) {
        skip();
        std::size_t from = pos_;
        bool neg = accept('-');
        if (peek_ident() == "inf") {
            pos_ += 3;
            infinite = true;
            return neg ? mpq_class(-1) : mpq_class(1);
        }
        skip();
        std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '/')) ++pos_;
        std::string s(src_.substr(start, pos_ - start));
        mpq_class q;
        if (s.empty() || q.set_str(s, 10) != 0 || (s.find('/') != std::string::npos && q.get_den() == 0))
            fail("expected a rational number or inf", from);
        q.canonicalize();
        infinite = false;
        return neg ? mpq_class(-q) : q;
    }

    Box box() {
        Box b;
        expect('[');
        do {
            skip();
            std::size_t from = pos_;
            Interval iv;
            if (accept('(')) iv.lo_closed = false;
            else if (accept('[')) iv.lo_closed = true;
            else fail("expected an interval", pos_);
            bool inf = false;
            mpq_class lo = rational_bound(inf);
            if (inf) {
                if (lo > 0 || iv.lo_closed) fail("lower bound must be -inf and open", from);
            } else {
                iv.lo = lo;
            }
            expect(',');
            mpq_class hi = rational_bound(inf);
            if (accept(')')) iv.hi_closed = false;
            else if (accept(']')) iv.hi_closed = true;
            else fail("expected ')' or ']'", pos_);
            if (inf) {
                if (hi < 0 || iv.hi_closed) fail("upper bound must be inf and open", from);
            } else {
                iv.hi = hi;
            }
            if (iv.empty()) fail("empty interval", from, pos_ - from);
            b.push_back(iv);
        } while (accept(','));
        expect(']');
        return b;
    }

    AffineFields affine_fields(std::vector<std::string>& refs) {
        AffineFields a;
        expect('(');
        a.p = static_cast<std::size_t>(integer("the even dimension"));
        expect('|');
        a.q = static_cast<std::size_t>(integer("the odd dimension"));
        expect(')');
        for (;;) {
            std::string kw = peek_ident();
            std::size_t at = pos_;
            if (kw == "coords" && !a.even) {
                pos_ += kw.size();
                std::vector<std::string> odd;
                a.even = name_list(true, &odd);
                a.odd = std::move(odd);
                if (a.even->size() != a.p || a.odd->size() != a.q)
                    fail("coords must list " + std::to_string(a.p) + " even and " + std::to_string(a.q) + " odd names",
                         at, pos_ - at);
            } else if (kw == "on" && !a.box) {
                pos_ += kw.size();
                a.box = box();
                if (a.box->size() != a.p) fail("box must have one interval per even coordinate", at, pos_ - at);
            } else if (kw == "coeff" && !a.coeff) {
                pos_ += kw.size();
                std::size_t nat = (skip(), pos_);
                a.coeff = ident("an algebra name");
                if (lookup(*a.coeff, nat) != Kind::Algebra) fail("'" + *a.coeff + "' is not an algebra", nat, a.coeff->size());
                refs.push_back(*a.coeff);
            } else if (kw == "field" && !a.field) {
                pos_ += kw.size();
                a.field = field_name();
            } else {
                break;
            }
        }
        return a;
    }

    Kind definition_call(Statement& st, std::initializer_list<Kind> allowed, const char* what) {
        skip();
        std::size_t at = pos_;
        st.call = call(st.refs);
        Kind k = st.call->spec->result;
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            fail("'" + st.call->name + "' gives a " + to_string(k) + ", not a " + what, at, st.call->span.length);
        return k;
    }

    Statement statement() {
        std::size_t from = pos_;
        Statement st;
        std::string kw = ident("a statement");
        if (kw == "algebra") {
            st.type = Statement::Type::Algebra;
            st.name = new_name();
            expect('=');
            if (peek_ident() == "weil") {
                pos_ += 4;
                st.weil = weil_fields();
            } else {
                definition_call(st, {Kind::Algebra}, "algebra");
            }
            symbols_[st.name] = Kind::Algebra;
        } else if (kw == "domain") {
            st.type = Statement::Type::Domain;
            st.name = new_name();
            expect('=');
            std::string head = peek_ident();
            if (head == "affine") {
                pos_ += head.size();
                st.affine = affine_fields(st.refs);
            } else {
                definition_call(st, {Kind::Domain, Kind::Bundle}, "domain");
            }
            symbols_[st.name] = Kind::Domain;
        } else if (kw == "morphism") {
            st.type = Statement::Type::Morphism;
            st.name = new_name();
            if (accept(':')) {
                for (auto* side : {&st.source, &st.target}) {
                    std::size_t at = (skip(), pos_);
                    *side = ident("a domain name");
                    if (!accepts(Param::Domain, lookup(*side, at))) fail("'" + *side + "' is not a domain", at, side->size());
                    st.refs.push_back(*side);
                    if (side == &st.source) {
                        expect('-');
                        if (pos_ >= src_.size() || src_[pos_] != '>') fail("expected '->'", pos_);
                        ++pos_;
                    }
                }
                expect('=');
                expect('{');
                std::set<std::string> seen;
                while (!accept('}')) {
                    Assignment asg;
                    skip();
                    asg.target_span = span(pos_, pos_);
                    asg.target = ident("a coordinate name");
                    asg.target_span.length = asg.target.size();
                    if (!seen.insert(asg.target).second)
                        fail("'" + asg.target + "' assigned twice", asg.target_span.offset, asg.target.size());
                    expect('=');
                    auto [text, sp] = raw(",;}");
                    asg.value = Arg{text, sp, nullptr};
                    st.components.push_back(std::move(asg));
                    if (!accept(',') && !accept(';') && !at('}')) fail("expected ',' or '}'", pos_);
                }
            } else {
                expect('=');
                definition_call(st, {Kind::Morphism}, "morphism");
            }
            symbols_[st.name] = Kind::Morphism;
        } else if (kw == "space") {
            st.type = Statement::Type::Space;
            st.name = new_name();
            expect('=');
            definition_call(st, {Kind::Space}, "space");
            symbols_[st.name] = Kind::Space;
        } else if (kw == "show") {
            st.type = Statement::Type::Show;
            std::string head = peek_ident();
            std::size_t save = (skip(), pos_);
            pos_ += head.size();
            bool is_call = !head.empty() && is_call_name(head) && at('(');
            pos_ = save;
            if (is_call) {
                st.call = call(st.refs);
            } else {
                st.name = ident("a name or a call");
                lookup(st.name, save);
                st.refs.push_back(st.name);
            }
        } else if (kw == "check") {
            st.type = Statement::Type::Check;
            check(st);
        } else {
            fail("unknown statement '" + kw + "' (expected algebra, domain, morphism, space, show or check)", from,
                 kw.size());
        }
        st.span = span(from, trimmed_end(from, pos_));
        std::sort(st.refs.begin(), st.refs.end());
        st.refs.erase(std::unique(st.refs.begin(), st.refs.end()), st.refs.end());
        return st;
    }

    void check(Statement& st) {
        skip();
        std::size_t at = pos_;
        st.suite = ident("a suite name");
        while (pos_ + 1 < src_.size() && src_[pos_] == '-' && is_ident_start(src_[pos_ + 1])) {
            ++pos_;
            st.suite += "-" + ident("a suite name");
        }
        const SuiteSpec* suite = find_suite(st.suite);
        if (!suite) fail("unknown check suite '" + st.suite + "'", at, st.suite.size());
        std::vector<std::size_t> arg_at, with_at;
        for (;;) {
            skip();
            if (pos_ >= src_.size() || src_[pos_] == ';') break;
            std::string w = peek_ident();
            if (w.empty() || kKeywords.count(w)) break;
            std::size_t wat = pos_;
            if (w == "with") {
                pos_ += w.size();
                do {
                    skip();
                    with_at.push_back(pos_);
                    st.with.push_back(ident("a name"));
                } while (accept(','));
            } else if (w == "count" || w == "seed" || w == "case") {
                pos_ += w.size();
                long long v = integer("a non-negative integer");
                if (v < 0) fail(w + " must be non-negative", wat, pos_ - wat);
                (w == "count" ? st.count : w == "seed" ? st.seed : st.case_index) = static_cast<std::uint64_t>(v);
            } else {
                pos_ += w.size();
                arg_at.push_back(wat);
                st.suite_args.push_back(w);
            }
        }
        auto check_names = [&](const std::vector<std::string>& names, const std::vector<std::size_t>& where, Param p) {
            for (std::size_t k = 0; k < names.size(); ++k) {
                if (!accepts(p, lookup(names[k], where[k])))
                    fail("'" + names[k] + "' is not a " + to_string(p), where[k], names[k].size());
                st.refs.push_back(names[k]);
            }
        };
        if (!st.suite_args.empty() || !suite->args.empty()) {
            if (st.suite_args.size() != suite->args.size() && !(st.suite_args.empty() && suite->args_optional))
                fail("'" + st.suite + "' takes " + std::to_string(suite->args.size()) + " argument(s)", at, pos_ - at);
            for (std::size_t k = 0; k < st.suite_args.size(); ++k)
                check_names({st.suite_args[k]}, {arg_at[k]}, suite->args[k]);
        }
        if (suite->with) check_names(st.with, with_at, *suite->with);
        else if (!st.with.empty()) fail("'" + st.suite + "' takes no 'with' list", with_at[0]);
        if (st.with.size() < suite->min_with)
            fail("'" + st.suite + "' needs " + std::to_string(suite->min_with) + " name(s) after 'with'", at, pos_ - at);
    }
};

}  // namespace

Script parse(std::string_view source) { return Parser(source).run(); }

}  // namespace superkernel::dsl
