#include "superkernel/weil.hpp"

#include "superkernel/errors.hpp"
#include "superkernel/linalg.hpp"
#include "superkernel/parse.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace superkernel {

namespace {

using IndexVector = SparseVector<std::size_t, std::less<std::size_t>>;
using IndexEchelon = RowEchelon<std::size_t, std::less<std::size_t>>;

void enumerate_even(std::size_t p, int d, std::vector<std::uint16_t>& cur, std::size_t k,
                    const std::function<void(const std::vector<std::uint16_t>&)>& emit) {
    if (k + 1 == p) {
        cur[k] = static_cast<std::uint16_t>(d);
        emit(cur);
        return;
    }
    for (int e = d; e >= 0; --e) {
        cur[k] = static_cast<std::uint16_t>(e);
        enumerate_even(p, d - e, cur, k + 1, emit);
    }
}

SuperPolynomial embed(const SuperPolynomial& f, const ContextPtr& ctx, std::size_t even_offset,
                      std::size_t odd_offset) {
    SuperPolynomial out(ctx);
    for (const auto& [m, c] : f.terms()) {
        Monomial n;
        n.exps.assign(ctx->num_even(), 0);
        std::copy(m.exps.begin(), m.exps.end(), n.exps.begin() + static_cast<std::ptrdiff_t>(even_offset));
        n.odd = m.odd << odd_offset;
        out.add_term(n, c);
    }
    return out;
}

Monomial concat(const Monomial& a, const Monomial& b, std::size_t num_even, std::size_t a_even,
                std::size_t a_odd) {
    Monomial m;
    m.exps.assign(num_even, 0);
    std::copy(a.exps.begin(), a.exps.end(), m.exps.begin());
    std::copy(b.exps.begin(), b.exps.end(), m.exps.begin() + static_cast<std::ptrdiff_t>(a_even));
    m.odd = a.odd | (b.odd << a_odd);
    return m;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
    if (!taken.count(base)) return base;
    for (int k = 2;; ++k) {
        std::string cand = base + "_" + std::to_string(k);
        if (!taken.count(cand)) return cand;
    }
}

void require_same_algebra(const WeilPtr& a, const WeilPtr& b, const char* where) {
    if (a.get() != b.get() && !a->same_structure(*b))
        throw ContextError(std::string(where) + ": elements of different Weil algebras");
}

}  // namespace

std::vector<Monomial> monomials_of_degree(const Context& ctx, int d) {
    std::vector<Monomial> out;
    if (d < 0) return out;
    std::size_t p = ctx.num_even(), q = ctx.num_odd();
    for (int k = 0; k <= d && k <= static_cast<int>(q); ++k) {
        int rest = d - k;
        if (p == 0 && rest > 0) continue;
        std::vector<OddSet> subsets;
        for (OddSet s = 0; s < (OddSet{1} << q); ++s)
            if (__builtin_popcountll(s) == k) subsets.push_back(s);
        std::vector<std::uint16_t> cur(p, 0);
        auto emit = [&](const std::vector<std::uint16_t>& e) {
            for (OddSet s : subsets) out.push_back(Monomial{e, s});
        };
        if (p == 0) emit(cur);
        else enumerate_even(p, rest, cur, 0, emit);
    }
    std::sort(out.begin(), out.end(), CanonicalOrder{});
    return out;
}

WeilPresentation WeilPresentation::make(std::vector<std::string> even, std::vector<std::string> odd, int truncate,
                                        const std::vector<std::string>& relations, Field field) {
    WeilPresentation p;
    p.ctx = Context::make(std::move(even), std::move(odd), field);
    p.truncate = truncate;
    for (const auto& r : relations) p.relations.push_back(parse_polynomial(p.ctx, r));
    return p;
}

// ---------------------------------------------------------------------------
// AlgebraElement

AlgebraElement::AlgebraElement(WeilPtr algebra) : alg_(std::move(algebra)), c_(alg_->dim()) {}

AlgebraElement::AlgebraElement(WeilPtr algebra, std::vector<Scalar> coefficients)
    : alg_(std::move(algebra)), c_(std::move(coefficients)) {
    if (c_.size() != alg_->dim()) throw ContextError("coefficient vector does not match the algebra dimension");
}

bool AlgebraElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::optional<Parity> AlgebraElement::parity() const {
    std::optional<Parity> p;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        Parity q = alg_->basis_parity(i);
        if (p && *p != q) return std::nullopt;
        p = q;
    }
    return p.value_or(Parity::Even);
}

bool AlgebraElement::has_parity(Parity p) const {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero() && alg_->basis_parity(i) != p) return false;
    return true;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    require_same_algebra(alg_, o.alg_, "+");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
    require_same_algebra(alg_, o.alg_, "-");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(const Scalar& s) {
    for (auto& c : c_) c *= s;
    return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_algebra(a.alg_, b.alg_, "*");
    const auto& A = *a.alg_;
    std::vector<Scalar> r(A.dim());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j].is_zero()) continue;
            Scalar ab = a.c_[i] * b.c_[j];
            for (const auto& t : A.product(i, j)) r[t.index] += ab * t.coefficient;
        }
    }
    return AlgebraElement(a.alg_, std::move(r));
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.alg_.get() != b.alg_.get() && !a.alg_->same_structure(*b.alg_)) return false;
    return a.c_ == b.c_;
}

SuperPolynomial AlgebraElement::to_polynomial() const {
    SuperPolynomial f(alg_->context());
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero()) f.add_term(alg_->basis()[i], c_[i]);
    return f;
}

std::string AlgebraElement::to_string() const { return to_polynomial().to_string(); }

Augmentation augment(const AlgebraElement& a) {
    AlgebraElement n = a;
    n -= a.algebra()->scalar(a.augmentation());
    return {a.augmentation(), std::move(n)};
}

AlgebraElement invert(const AlgebraElement& a) {
    auto [e, n] = augment(a);
    if (e.is_zero()) throw NotInvertibleError("element " + a.to_string() + " has zero augmentation");
    Scalar e_inv = e.inverse();
    AlgebraElement x = n * (-e_inv);
    AlgebraElement sum = a.algebra()->one();
    AlgebraElement power = sum;
    for (int k = 0; k < a.algebra()->girth(); ++k) {
        power = power * x;
        if (power.is_zero()) break;
        sum += power;
    }
    return sum * e_inv;
}

// ---------------------------------------------------------------------------
// WeilAlgebra

struct WeilAlgebra::Reducer {
    int truncate;
    RowEchelon<Monomial, LeadingFirst> echelon;
    std::map<Monomial, std::size_t, CanonicalOrder> index;

    std::vector<Scalar> reduce(const SuperPolynomial& f, std::size_t dim) const {
        auto v = echelon.make_vector();
        for (const auto& [m, c] : f.terms())
            if (m.degree() <= truncate) v.emplace(m, c);
        v = echelon.reduce(std::move(v));
        std::vector<Scalar> out(dim);
        for (const auto& [m, c] : v) out[index.at(m)] = c;
        return out;
    }
};

WeilAlgebra::WeilAlgebra(WeilPresentation pres, std::vector<Monomial> basis, std::vector<std::vector<Term>> table)
    : pres_(std::move(pres)), basis_(std::move(basis)), table_(std::move(table)) {}

WeilPtr WeilAlgebra::build(const WeilPresentation& p) {
    if (p.truncate < 0) throw TruncationError("negative truncation order");
    for (const auto& r : p.relations) {
        require_same_context(p.ctx, r.context(), "Weil presentation");
        if (!r.constant_term().is_zero())
            throw NotLocalError("relation " + r.to_string() + " has a nonzero constant term");
        if (!r.parity()) throw ParityError("relation " + r.to_string() + " is not homogeneous");
        if (p.ctx->field() == Field::Real && !r.is_k_valued())
            throw FieldError("relation " + r.to_string() + " has non-real coefficients");
    }
    auto reducer = std::make_shared<Reducer>();
    reducer->truncate = p.truncate;

    std::vector<Monomial> ambient;
    for (int d = 0; d <= p.truncate; ++d) {
        auto ms = monomials_of_degree(*p.ctx, d);
        ambient.insert(ambient.end(), ms.begin(), ms.end());
    }
    for (const auto& r : p.relations) {
        if (r.is_zero()) continue;
        int low = r.degree();
        for (const auto& [m, c] : r.terms()) low = std::min(low, m.degree());
        for (const auto& m : ambient) {
            if (m.degree() + low > p.truncate) continue;
            auto prod = r * SuperPolynomial::monomial(p.ctx, m);
            auto v = reducer->echelon.make_vector();
            for (const auto& [t, c] : prod.terms())
                if (t.degree() <= p.truncate) v.emplace(t, c);
            reducer->echelon.insert(std::move(v));
        }
    }
    reducer->echelon.fully_reduce();

    std::vector<Monomial> basis;
    for (const auto& m : ambient)
        if (!reducer->echelon.is_pivot(m)) basis.push_back(m);
    std::sort(basis.begin(), basis.end(), CanonicalOrder{});
    for (std::size_t i = 0; i < basis.size(); ++i) reducer->index.emplace(basis[i], i);

    std::size_t n = basis.size();
    std::vector<std::vector<Term>> table(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            int sign = odd_product_sign(basis[i].odd, basis[j].odd);
            if (sign == 0 || basis[i].degree() + basis[j].degree() > p.truncate) continue;
            Monomial m;
            m.exps.resize(p.ctx->num_even());
            for (std::size_t k = 0; k < m.exps.size(); ++k)
                m.exps[k] = static_cast<std::uint16_t>(basis[i].exps[k] + basis[j].exps[k]);
            m.odd = basis[i].odd | basis[j].odd;
            auto coeffs = reducer->reduce(SuperPolynomial::monomial(p.ctx, m, Scalar(sign)), n);
            for (std::size_t k = 0; k < n; ++k)
                if (!coeffs[k].is_zero()) table[i * n + j].push_back({k, coeffs[k]});
        }
    }

    auto alg = std::make_shared<WeilAlgebra>(p, std::move(basis), std::move(table));
    alg->reducer_ = reducer;
    std::vector<std::vector<Scalar>> gens;
    std::size_t ngen = p.ctx->num_even() + p.ctx->num_odd();
    for (std::size_t k = 0; k < ngen; ++k) {
        auto g = k < p.ctx->num_even() ? SuperPolynomial::even_generator(p.ctx, k)
                                       : SuperPolynomial::odd_generator(p.ctx, k - p.ctx->num_even());
        gens.push_back(reducer->reduce(g, n));
    }
    alg->finish(std::move(gens));
    return alg;
}

void WeilAlgebra::finish(std::vector<std::vector<Scalar>> generator_images) {
    generators_ = std::move(generator_images);
    std::size_t n = dim();
    // girth: iterate span(P_k * m) until it vanishes
    IndexEchelon current;
    for (std::size_t i = 1; i < n; ++i) {
        IndexVector v;
        v.emplace(i, Scalar(1));
        current.insert(std::move(v));
    }
    int k = 0;
    while (current.rank() > 0) {
        ++k;
        IndexEchelon next;
        for (const auto& [lead, row] : current.rows()) {
            for (std::size_t j = 1; j < n; ++j) {
                IndexVector v;
                for (const auto& [i, c] : row)
                    for (const auto& t : product(i, j)) v[t.index] += c * t.coefficient;
                std::erase_if(v, [](const auto& kv) { return kv.second.is_zero(); });
                next.insert(std::move(v));
            }
        }
        current = std::move(next);
    }
    girth_ = k;
}

WeilPtr WeilAlgebra::ground(Field field) {
    static const WeilPtr real = build(WeilPresentation{Context::make({}, {}, Field::Real), 0, {}});
    static const WeilPtr complex = build(WeilPresentation{Context::make({}, {}, Field::Complex), 0, {}});
    return field == Field::Real ? real : complex;
}

WeilPtr WeilAlgebra::tensor(const WeilPtr& a, const WeilPtr& b) {
    if (a->field() != b->field()) throw FieldError("tensor product of algebras over different fields");
    const auto& ca = *a->context();
    const auto& cb = *b->context();
    std::set<std::string> taken(ca.even_names().begin(), ca.even_names().end());
    taken.insert(ca.odd_names().begin(), ca.odd_names().end());
    auto rename = [&](const std::vector<std::string>& names) {
        std::vector<std::string> out;
        for (const auto& nm : names) {
            out.push_back(fresh_name(nm, taken));
            taken.insert(out.back());
        }
        return out;
    };
    std::vector<std::string> even = ca.even_names(), odd = ca.odd_names();
    auto be = rename(cb.even_names());
    auto bo = rename(cb.odd_names());
    even.insert(even.end(), be.begin(), be.end());
    odd.insert(odd.end(), bo.begin(), bo.end());
    if (odd.size() > static_cast<std::size_t>(kMaxOddGenerators)) throw ContextError("too many odd generators");

    WeilPresentation pres;
    pres.ctx = Context::make(even, odd, a->field());
    pres.truncate = a->presentation().truncate + b->presentation().truncate;
    std::size_t pa = ca.num_even(), qa = ca.num_odd();
    for (const auto& r : a->presentation().relations) pres.relations.push_back(embed(r, pres.ctx, 0, 0));
    for (const auto& r : b->presentation().relations) pres.relations.push_back(embed(r, pres.ctx, pa, qa));
    for (const auto& m : monomials_of_degree(ca, a->presentation().truncate + 1))
        pres.relations.push_back(embed(SuperPolynomial::monomial(a->context(), m), pres.ctx, 0, 0));
    for (const auto& m : monomials_of_degree(cb, b->presentation().truncate + 1))
        pres.relations.push_back(embed(SuperPolynomial::monomial(b->context(), m), pres.ctx, pa, qa));

    std::size_t na = a->dim(), nb = b->dim();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) pairs.emplace_back(i, j);
    auto mono = [&](const std::pair<std::size_t, std::size_t>& pr) {
        return concat(a->basis()[pr.first], b->basis()[pr.second], even.size(), pa, qa);
    };
    std::sort(pairs.begin(), pairs.end(),
              [&](const auto& x, const auto& y) { return CanonicalOrder{}(mono(x), mono(y)); });
    std::vector<std::size_t> index(na * nb);
    std::vector<Monomial> basis;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        index[pairs[k].first * nb + pairs[k].second] = k;
        basis.push_back(mono(pairs[k]));
    }

    std::size_t n = pairs.size();
    std::vector<std::vector<Term>> table(n * n);
    for (std::size_t x = 0; x < n; ++x) {
        auto [i, j] = pairs[x];
        for (std::size_t y = 0; y < n; ++y) {
            auto [k, l] = pairs[y];
            const auto& ak = a->product(i, k);
            const auto& bl = b->product(j, l);
            if (ak.empty() || bl.empty()) continue;
            Scalar sign(koszul(b->basis_parity(j), a->basis_parity(k)));
            std::map<std::size_t, Scalar> acc;
            for (const auto& s : ak)
                for (const auto& t : bl) acc[index[s.index * nb + t.index]] += sign * s.coefficient * t.coefficient;
            for (auto& [idx, c] : acc)
                if (!c.is_zero()) table[x * n + y].push_back({idx, c});
        }
    }

    auto alg = std::make_shared<WeilAlgebra>(std::move(pres), std::move(basis), std::move(table));
    alg->factors_ = TensorFactors{a, b, pairs, index};
    std::vector<std::vector<Scalar>> gens;
    auto lift = [&](const AlgebraElement& e, bool left) {
        std::vector<Scalar> v(n);
        for (std::size_t i = 0; i < e.coefficients().size(); ++i)
            if (!e[i].is_zero()) v[left ? index[i * nb] : index[i]] = e[i];
        return v;
    };
    std::size_t pb = cb.num_even();
    for (std::size_t k = 0; k < pa; ++k) gens.push_back(lift(a->generator(k), true));
    for (std::size_t k = 0; k < pb; ++k) gens.push_back(lift(b->generator(k), false));
    for (std::size_t k = 0; k < qa; ++k) gens.push_back(lift(a->generator(pa + k), true));
    for (std::size_t k = 0; k < cb.num_odd(); ++k) gens.push_back(lift(b->generator(pb + k), false));
    alg->finish(std::move(gens));
    return alg;
}

std::size_t WeilAlgebra::dim_even() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(basis_.begin(), basis_.end(), [](const Monomial& m) { return m.parity() == Parity::Even; }));
}

std::string WeilAlgebra::graded_dim() const { return std::to_string(dim_even()) + "|" + std::to_string(dim_odd()); }

AlgebraElement WeilAlgebra::zero() const { return AlgebraElement(shared_from_this()); }

AlgebraElement WeilAlgebra::one() const { return scalar(Scalar(1)); }

AlgebraElement WeilAlgebra::scalar(const Scalar& s) const {
    std::vector<Scalar> v(dim());
    v[0] = s;
    return AlgebraElement(shared_from_this(), std::move(v));
}

AlgebraElement WeilAlgebra::basis_element(std::size_t i) const {
    std::vector<Scalar> v(dim());
    v.at(i) = Scalar(1);
    return AlgebraElement(shared_from_this(), std::move(v));
}

AlgebraElement WeilAlgebra::generator(std::size_t k) const {
    return AlgebraElement(shared_from_this(), generators_.at(k));
}

AlgebraElement WeilAlgebra::generator(const std::string& name) const {
    auto hit = context()->find(name);
    if (!hit) throw ContextError("no generator named " + name);
    return generator(hit->parity == Parity::Even ? hit->index : context()->num_even() + hit->index);
}

AlgebraElement WeilAlgebra::element(const SuperPolynomial& f) const {
    require_same_context(context(), f.context(), "Weil algebra element");
    if (reducer_) return AlgebraElement(shared_from_this(), reducer_->reduce(f, dim()));
    std::vector<AlgebraElement> ev, od;
    std::size_t p = context()->num_even();
    for (std::size_t k = 0; k < num_generators(); ++k) (k < p ? ev : od).push_back(generator(k));
    return substitute<AlgebraElement>(f, ev, od, zero(), one());
}

AlgebraElement WeilAlgebra::parse(const std::string& text) const { return element(parse_polynomial(context(), text)); }

bool WeilAlgebra::same_structure(const WeilAlgebra& o) const {
    if (this == &o) return true;
    if (!context()->same_as(*o.context()) || basis_ != o.basis_) return false;
    for (std::size_t k = 0; k < table_.size(); ++k) {
        if (table_[k].size() != o.table_[k].size()) return false;
        for (std::size_t t = 0; t < table_[k].size(); ++t)
            if (table_[k][t].index != o.table_[k][t].index || !(table_[k][t].coefficient == o.table_[k][t].coefficient))
                return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// AlgebraMorphism

AlgebraMorphism AlgebraMorphism::make(WeilPtr source, WeilPtr target, std::vector<AlgebraElement> images) {
    if (images.size() != source->num_generators())
        throw ContextError("expected " + std::to_string(source->num_generators()) + " generator images, got " +
                           std::to_string(images.size()));
    std::size_t p = source->context()->num_even();
    for (std::size_t k = 0; k < images.size(); ++k) {
        require_same_algebra(images[k].algebra(), target, "algebra morphism");
        images[k] = AlgebraElement(target, images[k].coefficients());
        Parity want = k < p ? Parity::Even : Parity::Odd;
        if (!images[k].has_parity(want))
            throw ParityError("image " + images[k].to_string() + " of generator " + std::to_string(k) + " is not " +
                              to_string(want));
        if (!images[k].augmentation().is_zero())
            throw NotAMorphismError("image " + images[k].to_string() + " is not in the maximal ideal");
    }
    std::span<const AlgebraElement> ev(images.data(), p), od(images.data() + p, images.size() - p);
    auto apply = [&](const SuperPolynomial& f) {
        return substitute<AlgebraElement>(f, ev, od, target->zero(), target->one());
    };
    const auto& pres = source->presentation();
    for (const auto& r : pres.relations)
        if (!apply(r).is_zero()) throw NotAMorphismError("relation " + r.to_string() + " does not map to zero");
    if (pres.truncate + 1 <= target->girth()) {
        for (const auto& m : monomials_of_degree(*source->context(), pres.truncate + 1))
            if (!apply(SuperPolynomial::monomial(source->context(), m)).is_zero())
                throw NotAMorphismError("monomial " + render_monomial(*source->context(), m) +
                                        " beyond the truncation order does not map to zero");
    }
    std::vector<AlgebraElement> basis_images;
    for (const auto& m : source->basis()) basis_images.push_back(apply(SuperPolynomial::monomial(source->context(), m)));
    return AlgebraMorphism(std::move(source), std::move(target), std::move(images), std::move(basis_images));
}

AlgebraMorphism AlgebraMorphism::identity(const WeilPtr& a) {
    std::vector<AlgebraElement> images, basis_images;
    for (std::size_t k = 0; k < a->num_generators(); ++k) images.push_back(a->generator(k));
    for (std::size_t i = 0; i < a->dim(); ++i) basis_images.push_back(a->basis_element(i));
    return AlgebraMorphism(a, a, std::move(images), std::move(basis_images));
}

AlgebraMorphism AlgebraMorphism::augmentation(const WeilPtr& a) {
    auto k = WeilAlgebra::ground(a->field());
    std::vector<AlgebraElement> images(a->num_generators(), k->zero()), basis_images(a->dim(), k->zero());
    basis_images[0] = k->one();
    return AlgebraMorphism(a, k, std::move(images), std::move(basis_images));
}

AlgebraMorphism AlgebraMorphism::unit(const WeilPtr& a) {
    auto k = WeilAlgebra::ground(a->field());
    return AlgebraMorphism(k, a, {}, {a->one()});
}

AlgebraElement AlgebraMorphism::operator()(const AlgebraElement& a) const {
    require_same_algebra(a.algebra(), source_, "apply algebra morphism");
    AlgebraElement r = target_->zero();
    for (std::size_t i = 0; i < a.coefficients().size(); ++i)
        if (!a[i].is_zero()) r += a[i] * basis_images_[i];
    return r;
}

bool operator==(const AlgebraMorphism& a, const AlgebraMorphism& b) {
    if (!a.source_->same_structure(*b.source_) || !a.target_->same_structure(*b.target_)) return false;
    return a.basis_images_ == b.basis_images_;
}

AlgebraMorphism compose(const AlgebraMorphism& psi, const AlgebraMorphism& phi) {
    if (!phi.target()->same_structure(*psi.source())) throw ContextError("compose: algebras do not match");
    std::vector<AlgebraElement> images;
    for (const auto& x : phi.images()) images.push_back(psi(AlgebraElement(psi.source(), x.coefficients())));
    return AlgebraMorphism::make(phi.source(), psi.target(), std::move(images));
}

namespace {

const WeilAlgebra::TensorFactors& require_factors(const WeilPtr& ab) {
    if (!ab->factors()) throw ContextError("algebra is not a tensor product");
    return *ab->factors();
}

AlgebraElement lift(const WeilPtr& ab, const AlgebraElement& x, bool left) {
    const auto& f = require_factors(ab);
    std::vector<Scalar> v(ab->dim());
    for (std::size_t i = 0; i < x.coefficients().size(); ++i)
        if (!x[i].is_zero()) v[left ? f.at(i, 0) : f.at(0, i)] = x[i];
    return AlgebraElement(ab, std::move(v));
}

}  // namespace

AlgebraMorphism tensor_inclusion_left(const WeilPtr& ab) {
    const auto& f = require_factors(ab);
    std::vector<AlgebraElement> images;
    for (std::size_t k = 0; k < f.left->num_generators(); ++k) images.push_back(lift(ab, f.left->generator(k), true));
    return AlgebraMorphism::make(f.left, ab, std::move(images));
}

AlgebraMorphism tensor_inclusion_right(const WeilPtr& ab) {
    const auto& f = require_factors(ab);
    std::vector<AlgebraElement> images;
    for (std::size_t k = 0; k < f.right->num_generators(); ++k)
        images.push_back(lift(ab, f.right->generator(k), false));
    return AlgebraMorphism::make(f.right, ab, std::move(images));
}

AlgebraMorphism tensor_flip(const WeilPtr& ab, const WeilPtr& ba) {
    const auto& f = require_factors(ab);
    const auto& g = require_factors(ba);
    if (!f.left->same_structure(*g.right) || !f.right->same_structure(*g.left))
        throw ContextError("tensor_flip: factors do not match");
    std::size_t pa = f.left->context()->num_even(), pb = f.right->context()->num_even();
    std::size_t qa = f.left->context()->num_odd(), qb = f.right->context()->num_odd();
    std::vector<AlgebraElement> images;
    auto left_gen = [&](std::size_t k) { return lift(ba, AlgebraElement(g.right, f.left->generator(k).coefficients()), false); };
    auto right_gen = [&](std::size_t k) { return lift(ba, AlgebraElement(g.left, f.right->generator(k).coefficients()), true); };
    for (std::size_t k = 0; k < pa; ++k) images.push_back(left_gen(k));
    for (std::size_t k = 0; k < pb; ++k) images.push_back(right_gen(k));
    for (std::size_t k = 0; k < qa; ++k) images.push_back(left_gen(pa + k));
    for (std::size_t k = 0; k < qb; ++k) images.push_back(right_gen(pb + k));
    return AlgebraMorphism::make(ab, ba, std::move(images));
}

// ---------------------------------------------------------------------------
// standard algebras

WeilPtr multijet(int p, int q, int m, Field field) {
    if (p < 0 || q < 0 || m < 0) throw ContextError("multijet parameters must be non-negative");
    std::vector<std::string> even, odd;
    for (int k = 1; k <= p; ++k) even.push_back("T" + std::to_string(k));
    for (int k = 1; k <= q; ++k) odd.push_back("tau" + std::to_string(k));
    return WeilAlgebra::build(WeilPresentation::make(even, odd, m, {}, field));
}

WeilPtr grassmann(int n, Field field) {
    if (n < 0) throw ContextError("grassmann: negative number of generators");
    std::vector<std::string> odd;
    for (int k = 1; k <= n; ++k) odd.push_back("tau" + std::to_string(k));
    return WeilAlgebra::build(WeilPresentation::make({}, odd, n, {}, field));
}

WeilPtr dual_numbers(Field field) { return WeilAlgebra::build(WeilPresentation::make({"e"}, {}, 1, {}, field)); }

WeilPtr super_dual_numbers(Field field) { return multijet(1, 1, 1, field); }

DerivedAlgebra reduction(const WeilPtr& a) {
    return {WeilAlgebra::ground(a->field()), AlgebraMorphism::augmentation(a)};
}

DerivedAlgebra body(const WeilPtr& a) {
    const auto& pres = a->presentation();
    WeilPresentation bp;
    bp.ctx = Context::make(pres.ctx->even_names(), {}, a->field());
    bp.truncate = pres.truncate;
    for (const auto& r : pres.relations) {
        SuperPolynomial s(bp.ctx);
        for (const auto& [m, c] : r.terms())
            if (m.odd == 0) s.add_term(m, c);
        if (!s.is_zero()) bp.relations.push_back(std::move(s));
    }
    auto b = WeilAlgebra::build(bp);
    std::vector<AlgebraElement> images;
    for (std::size_t k = 0; k < a->num_generators(); ++k)
        images.push_back(k < bp.ctx->num_even() ? b->generator(k) : b->zero());
    return {b, AlgebraMorphism::make(a, b, std::move(images))};
}

DerivedAlgebra even_part(const WeilPtr& a) {
    std::size_t n = a->dim();
    std::vector<std::size_t> even_m;
    for (std::size_t i = 1; i < n; ++i)
        if (a->basis_parity(i) == Parity::Even) even_m.push_back(i);
    auto to_sparse = [](const AlgebraElement& x) {
        IndexVector v;
        for (std::size_t i = 0; i < x.coefficients().size(); ++i)
            if (!x[i].is_zero()) v.emplace(i, x[i]);
        return v;
    };
    // generators: even basis elements independent modulo (m_ev)^2
    IndexEchelon span;
    for (std::size_t i : even_m)
        for (std::size_t j : even_m) span.insert(to_sparse(a->basis_element(i) * a->basis_element(j)));
    std::vector<AlgebraElement> chosen;
    for (std::size_t i : even_m) {
        IndexVector v;
        v.emplace(i, Scalar(1));
        if (span.insert(std::move(v))) chosen.push_back(a->basis_element(i));
    }
    std::vector<std::string> names;
    for (std::size_t k = 0; k < chosen.size(); ++k) names.push_back("e" + std::to_string(k + 1));
    auto ctx = Context::make(names, {}, a->field());

    // kernel of k[e] -> A_ev, degree by degree until every monomial vanishes
    using Key = std::pair<int, std::size_t>;
    RowEchelon<Key, std::less<Key>> kernel;
    std::vector<Monomial> monos;
    int top = 0;
    std::vector<std::pair<Monomial, AlgebraElement>> images_prev;
    for (int d = 1; !chosen.empty(); ++d) {
        bool any = false;
        for (const auto& m : monomials_of_degree(*ctx, d)) {
            std::vector<AlgebraElement> ev(chosen.begin(), chosen.end());
            auto img = substitute<AlgebraElement>(SuperPolynomial::monomial(ctx, m), ev, {}, a->zero(), a->one());
            if (!img.is_zero()) any = true;
            images_prev.emplace_back(m, img);
        }
        if (!any) break;
        top = d;
    }
    WeilPresentation ep;
    ep.ctx = ctx;
    ep.truncate = top;
    for (const auto& [m, img] : images_prev) {
        if (m.degree() > top) continue;
        SparseVector<Key, std::less<Key>> v;
        for (std::size_t i = 0; i < n; ++i)
            if (!img[i].is_zero()) v.emplace(Key{0, i}, img[i]);
        v.emplace(Key{1, monos.size()}, Scalar(1));
        monos.push_back(m);
        kernel.insert(std::move(v));
    }
    for (const auto& [lead, row] : kernel.rows()) {
        if (lead.first != 1) continue;
        SuperPolynomial r(ctx);
        for (const auto& [k, c] : row) r.add_term(monos[k.second], c);
        ep.relations.push_back(std::move(r));
    }
    auto e = WeilAlgebra::build(ep);
    if (e->dim() != a->dim_even()) throw KernelError("InternalError", "even part dimension mismatch");
    std::vector<AlgebraElement> images(chosen.begin(), chosen.end());
    return {e, AlgebraMorphism::make(e, a, std::move(images))};
}

WeilPtr complexify(const WeilPtr& a) {
    if (a->field() == Field::Complex) throw FieldError("complexify: algebra is already complex");
    auto algebra_over = [&](const WeilPtr& x) {
        WeilPresentation cp;
        cp.ctx = Context::make(x->context()->even_names(), x->context()->odd_names(), Field::Complex);
        cp.truncate = x->presentation().truncate;
        for (const auto& r : x->presentation().relations) cp.relations.push_back(r.rebased(cp.ctx));
        return cp;
    };
    if (a->factors()) return WeilAlgebra::tensor(complexify(a->factors()->left), complexify(a->factors()->right));
    return WeilAlgebra::build(algebra_over(a));
}

}  // namespace superkernel
