#include "superkernel/polynomial.hpp"

#include "superkernel/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace superkernel {

const char* to_string(Parity p) noexcept { return p == Parity::Even ? "even" : "odd"; }

int Monomial::even_degree() const {
    return std::accumulate(exps.begin(), exps.end(), 0);
}

bool Monomial::is_one() const {
    return odd == 0 && std::all_of(exps.begin(), exps.end(), [](auto e) { return e == 0; });
}

int odd_product_sign(OddSet a, OddSet b) {
    if (a & b) return 0;
    // count pairs (i in a, j in b) with i > j
    int swaps = 0;
    for (OddSet rest = b; rest; rest &= rest - 1) {
        int j = __builtin_ctzll(rest);
        OddSet above = (j >= 63) ? 0 : (a >> (j + 1));
        swaps += __builtin_popcountll(above);
    }
    return (swaps & 1) ? -1 : 1;
}

int graded_lex_compare(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    std::size_t n = std::max(a.exps.size(), b.exps.size());
    for (std::size_t k = 0; k < n; ++k) {
        int ea = k < a.exps.size() ? a.exps[k] : 0;
        int eb = k < b.exps.size() ? b.exps[k] : 0;
        if (ea != eb) return ea < eb ? -1 : 1;
    }
    OddSet diff = a.odd ^ b.odd;
    if (!diff) return 0;
    OddSet low = diff & (~diff + 1);
    return (a.odd & low) ? 1 : -1;
}

bool CanonicalOrder::operator()(const Monomial& a, const Monomial& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return graded_lex_compare(a, b) > 0;
}

Context::Context(std::vector<std::string> even, std::vector<std::string> odd, Field field)
    : even_(std::move(even)), odd_(std::move(odd)), field_(field) {
    if (odd_.size() > static_cast<std::size_t>(kMaxOddGenerators))
        throw ContextError("too many odd generators");
}

std::shared_ptr<const Context> Context::make(std::vector<std::string> even,
                                             std::vector<std::string> odd, Field field) {
    return std::make_shared<const Context>(std::move(even), std::move(odd), field);
}

std::optional<Context::Lookup> Context::find(const std::string& name) const {
    for (std::size_t k = 0; k < even_.size(); ++k)
        if (even_[k] == name) return Lookup{Parity::Even, k};
    for (std::size_t k = 0; k < odd_.size(); ++k)
        if (odd_[k] == name) return Lookup{Parity::Odd, k};
    return std::nullopt;
}

void require_same_context(const ContextPtr& a, const ContextPtr& b, const char* where) {
    if (a.get() == b.get()) return;
    if (!a || !b || !a->same_as(*b))
        throw ContextError(std::string("context mismatch in ") + where);
}

SuperPolynomial SuperPolynomial::constant(ContextPtr ctx, const Scalar& c) {
    Monomial m;
    m.exps.assign(ctx->num_even(), 0);
    return monomial(std::move(ctx), std::move(m), c);
}

SuperPolynomial SuperPolynomial::even_generator(ContextPtr ctx, std::size_t index) {
    if (index >= ctx->num_even()) throw ContextError("even generator index out of range");
    Monomial m;
    m.exps.assign(ctx->num_even(), 0);
    m.exps[index] = 1;
    return monomial(std::move(ctx), std::move(m));
}

SuperPolynomial SuperPolynomial::odd_generator(ContextPtr ctx, std::size_t index) {
    if (index >= ctx->num_odd()) throw ContextError("odd generator index out of range");
    Monomial m;
    m.exps.assign(ctx->num_even(), 0);
    m.odd = OddSet{1} << index;
    return monomial(std::move(ctx), std::move(m));
}

SuperPolynomial SuperPolynomial::generator(ContextPtr ctx, const std::string& name) {
    auto found = ctx->find(name);
    if (!found) throw ContextError("unknown generator '" + name + "'");
    return found->parity == Parity::Even ? even_generator(std::move(ctx), found->index)
                                         : odd_generator(std::move(ctx), found->index);
}

SuperPolynomial SuperPolynomial::monomial(ContextPtr ctx, Monomial m, const Scalar& c) {
    if (m.exps.size() != ctx->num_even()) throw ContextError("monomial arity mismatch");
    SuperPolynomial p(std::move(ctx));
    p.add_term(m, c);
    return p;
}

Scalar SuperPolynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar() : it->second;
}

Scalar SuperPolynomial::constant_term() const {
    if (terms_.empty()) return Scalar();
    const auto& [m, c] = *terms_.begin();
    return m.is_one() ? c : Scalar();
}

int SuperPolynomial::degree() const {
    if (terms_.empty()) return -1;
    return terms_.rbegin()->first.degree();
}

std::optional<Parity> SuperPolynomial::parity() const {
    if (has_parity(Parity::Even)) return Parity::Even;
    if (has_parity(Parity::Odd)) return Parity::Odd;
    return std::nullopt;
}

bool SuperPolynomial::has_parity(Parity p) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [p](const auto& t) { return t.first.parity() == p; });
}

bool SuperPolynomial::is_k_valued() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return t.second.is_k_valued(); });
}

bool SuperPolynomial::involves_odd() const {
    return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.odd != 0; });
}

void SuperPolynomial::add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SuperPolynomial& SuperPolynomial::operator+=(const SuperPolynomial& o) {
    require_same_context(ctx_, o.ctx_, "polynomial addition");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

SuperPolynomial& SuperPolynomial::operator-=(const SuperPolynomial& o) {
    require_same_context(ctx_, o.ctx_, "polynomial subtraction");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

SuperPolynomial& SuperPolynomial::operator*=(const Scalar& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
}

SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b) {
    require_same_context(a.ctx_, b.ctx_, "poly_mul");
    SuperPolynomial out(a.ctx_);
    Monomial prod;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            int sign = odd_product_sign(ma.odd, mb.odd);
            if (sign == 0) continue;
            prod.exps = ma.exps;
            for (std::size_t k = 0; k < prod.exps.size(); ++k) prod.exps[k] += mb.exps[k];
            prod.odd = ma.odd | mb.odd;
            Scalar c = ca * cb;
            if (sign < 0) c = -c;
            out.add_term(prod, c);
        }
    }
    return out;
}

SuperPolynomial SuperPolynomial::pow(unsigned k) const {
    SuperPolynomial result = constant(ctx_, Scalar(1));
    SuperPolynomial base = *this;
    while (k) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

bool operator==(const SuperPolynomial& a, const SuperPolynomial& b) {
    if (!(a.ctx_.get() == b.ctx_.get() || a.ctx_->same_as(*b.ctx_))) return false;
    return a.terms_ == b.terms_;
}

SuperPolynomial SuperPolynomial::part(Parity p) const {
    SuperPolynomial out(ctx_);
    for (const auto& [m, c] : terms_)
        if (m.parity() == p) out.terms_.emplace_hint(out.terms_.end(), m, c);
    return out;
}

SuperPolynomial SuperPolynomial::truncated(int n) const {
    SuperPolynomial out(ctx_);
    for (const auto& [m, c] : terms_)
        if (m.degree() <= n) out.terms_.emplace_hint(out.terms_.end(), m, c);
    return out;
}

SuperPolynomial SuperPolynomial::rebased(ContextPtr other) const {
    if (other->num_even() != ctx_->num_even() || other->num_odd() != ctx_->num_odd())
        throw ContextError("rebase needs matching generator counts");
    SuperPolynomial out(std::move(other));
    out.terms_ = terms_;
    return out;
}

std::map<OddSet, SuperPolynomial> SuperPolynomial::grassmann_expand() const {
    std::map<OddSet, SuperPolynomial> parts;
    for (const auto& [m, c] : terms_) {
        Monomial even_part{m.exps, 0};
        parts.try_emplace(m.odd, ctx_).first->second.add_term(even_part, c);
    }
    return parts;
}

SuperPolynomial SuperPolynomial::reassemble(ContextPtr ctx,
                                            const std::map<OddSet, SuperPolynomial>& parts) {
    SuperPolynomial out(ctx);
    for (const auto& [odd, f] : parts) {
        require_same_context(ctx, f.context(), "reassemble");
        for (const auto& [m, c] : f.terms()) {
            if (m.odd != 0) throw ContextError("Grassmann coefficient contains odd generators");
            out.add_term(Monomial{m.exps, odd}, c);
        }
    }
    return out;
}

Scalar SuperPolynomial::evaluate_reduced(std::span<const Scalar> point) const {
    if (point.size() != ctx_->num_even()) throw ContextError("point dimension mismatch");
    Scalar total;
    for (const auto& [m, c] : terms_) {
        if (m.odd) continue;
        Scalar v = c;
        for (std::size_t k = 0; k < m.exps.size(); ++k)
            for (unsigned e = 0; e < m.exps[k]; ++e) v *= point[k];
        total += v;
    }
    return total;
}

std::string render_monomial(const Context& ctx, const Monomial& m) {
    std::string out;
    auto append = [&out](const std::string& s) {
        if (!out.empty()) out += '*';
        out += s;
    };
    for (std::size_t k = 0; k < m.exps.size(); ++k) {
        if (m.exps[k] == 0) continue;
        std::string f = ctx.even_names()[k];
        if (m.exps[k] > 1) f += "^" + std::to_string(m.exps[k]);
        append(f);
    }
    for (OddSet rest = m.odd; rest; rest &= rest - 1)
        append(ctx.odd_names()[static_cast<std::size_t>(__builtin_ctzll(rest))]);
    return out.empty() ? "1" : out;
}

std::string SuperPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        bool one = m.is_one();
        Scalar coeff = c;
        bool negative = false;
        if (c.is_k_valued() && sgn(c.re()) < 0) {
            negative = true;
            coeff = -c;
        } else if (sgn(c.re()) == 0 && sgn(c.im()) < 0) {
            negative = true;
            coeff = -c;
        }
        if (first)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        first = false;
        if (one) {
            os << coeff.to_string();
            continue;
        }
        if (!coeff.is_one()) {
            if (coeff.needs_parens())
                os << '(' << coeff.to_string() << ")*";
            else
                os << coeff.to_string() << '*';
        }
        os << render_monomial(*ctx_, m);
    }
    return os.str();
}

}  // namespace superkernel
