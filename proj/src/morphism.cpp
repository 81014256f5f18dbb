#include "superkernel/morphism.hpp"

#include "superkernel/errors.hpp"
#include "superkernel/interval_eval.hpp"

#include <functional>

namespace superkernel {

const char* to_string(MappingVerdict v) noexcept {
    switch (v) {
        case MappingVerdict::Verified: return "Verified";
        case MappingVerdict::Unknown: return "Unknown";
        case MappingVerdict::Violated: return "Violated";
    }
    return "?";
}

namespace {

std::size_t coeff_even_count(const SuperDomain& x) { return x.coeff()->context()->num_even(); }

std::string point_string(const Point& x) {
    std::string s = "(";
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (k) s += ", ";
        s += x[k].get_str();
    }
    return s + ")";
}

std::vector<mpq_class> candidates(const Interval& iv) {
    std::vector<mpq_class> out;
    if (iv.lo && iv.hi && *iv.lo == *iv.hi) return {*iv.lo};
    if (iv.lo && iv.hi) {
        if (iv.lo_closed) out.push_back(*iv.lo);
        for (int j = 1; j <= 5; ++j) out.push_back(*iv.lo + (*iv.hi - *iv.lo) * mpq_class(j, 6));
        if (iv.hi_closed) out.push_back(*iv.hi);
    } else if (iv.lo) {
        if (iv.lo_closed) out.push_back(*iv.lo);
        for (auto d : {mpq_class(1, 2), mpq_class(1), mpq_class(2), mpq_class(10), mpq_class(1000)})
            out.push_back(*iv.lo + d);
    } else if (iv.hi) {
        if (iv.hi_closed) out.push_back(*iv.hi);
        for (auto d : {mpq_class(1, 2), mpq_class(1), mpq_class(2), mpq_class(10), mpq_class(1000)})
            out.push_back(*iv.hi - d);
    } else {
        for (long v : {0L, 1L, -1L, 2L, -2L, 10L, -10L, 1000L, -1000L}) out.emplace_back(v);
        out.emplace_back(1, 2);
    }
    return out;
}

mpq_class evaluate_real(const SuperPolynomial& f, std::span<const mpq_class> x) {
    std::vector<Scalar> pt;
    for (const auto& v : x) pt.emplace_back(v);
    return f.evaluate_reduced(pt).re();
}

bool on_locus(const std::vector<SuperPolynomial>& locus, const Point& x) {
    std::vector<Scalar> pt;
    for (const auto& v : x) pt.emplace_back(v);
    for (const auto& g : locus)
        if (!g.evaluate_reduced(pt).is_zero()) return false;
    return true;
}

std::vector<SuperPolynomial> reduced_even_components(const std::vector<Superfunction>& comps, std::size_t p) {
    std::vector<SuperPolynomial> out;
    for (std::size_t a = 0; a < p; ++a) out.push_back(reduced_polynomial(comps[a]));
    return out;
}

std::vector<SuperPolynomial> locus_of(const FinSuperspace& y) {
    std::vector<SuperPolynomial> out;
    for (const auto& g : y.generators())
        if (g.has_parity(Parity::Even)) out.push_back(reduced_polynomial(g));
    return out;
}

}  // namespace

std::vector<Point> sample_points(const Box& box, std::size_t limit) {
    std::vector<std::vector<mpq_class>> axes;
    std::size_t total = 1;
    for (const auto& iv : box) {
        axes.push_back(candidates(iv));
        total = total > limit ? total : total * axes.back().size();
    }
    std::vector<Point> out;
    if (total <= limit) {
        for (std::size_t n = 0; n < total; ++n) {
            Point x;
            std::size_t rest = n;
            for (const auto& ax : axes) {
                x.push_back(ax[rest % ax.size()]);
                rest /= ax.size();
            }
            out.push_back(std::move(x));
        }
        return out;
    }
    Rng rng(0x5a3b1e);
    for (std::size_t n = 0; n < limit; ++n) {
        Point x;
        for (const auto& ax : axes)
            x.push_back(ax[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(ax.size()) - 1))]);
        out.push_back(std::move(x));
    }
    return out;
}

namespace {

VerdictReport verdict_with_locus(const std::vector<SuperPolynomial>& reduced_even, const std::vector<Box>& boxes,
                                 const Box& target_box, const std::vector<SuperPolynomial>& locus) {
    bool verified = true;
    for (const auto& box : boxes)
        for (std::size_t a = 0; a < reduced_even.size() && verified; ++a)
            if (!evaluate_range(reduced_even[a], box).inside(target_box[a])) verified = false;
    if (verified) return {MappingVerdict::Verified, std::nullopt};
    for (const auto& box : boxes)
        for (const auto& x : sample_points(box)) {
            if (!locus.empty() && !on_locus(locus, x)) continue;
            for (std::size_t a = 0; a < reduced_even.size(); ++a)
                if (!target_box[a].contains(evaluate_real(reduced_even[a], x)))
                    return {MappingVerdict::Violated, x};
        }
    return {MappingVerdict::Unknown, std::nullopt};
}

}  // namespace

VerdictReport mapping_verdict(const std::vector<SuperPolynomial>& reduced_even, const std::vector<Box>& source_boxes,
                              const Box& target_box) {
    return verdict_with_locus(reduced_even, source_boxes, target_box, {});
}

std::vector<Superfunction> generator_functions(const SuperDomain& x, Parity p) {
    std::vector<Superfunction> out;
    const auto& C = *x.coeff();
    std::size_t ce = coeff_even_count(x);
    if (p == Parity::Even) {
        for (std::size_t k = 0; k < x.p(); ++k) out.push_back(Superfunction::even_coordinate(x, k));
        for (std::size_t k = 0; k < ce; ++k) out.push_back(Superfunction::from_coefficient(x, C.generator(k)));
    } else {
        for (std::size_t k = 0; k < x.q(); ++k) out.push_back(Superfunction::odd_coordinate(x, k));
        for (std::size_t k = ce; k < C.num_generators(); ++k)
            out.push_back(Superfunction::from_coefficient(x, C.generator(k)));
    }
    return out;
}

Superfunction substitute_generators(const SuperPolynomial& f, const std::vector<Superfunction>& even,
                                    const std::vector<Superfunction>& odd, const SuperDomain& on) {
    if (even.size() != f.context()->num_even() || odd.size() != f.context()->num_odd())
        throw ContextError("substitution has the wrong number of images");
    return substitute<Superfunction>(f, even, odd, Superfunction(on), Superfunction::constant(on, Scalar(1)));
}

// ---------------------------------------------------------------------------

SuperMorphism SuperMorphism::make(const SuperDomain& source, const SuperDomain& target,
                                  std::vector<Superfunction> components,
                                  std::optional<std::vector<Superfunction>> coeff_images) {
    return build(source, std::nullopt, target, std::move(components), std::move(coeff_images));
}

SuperMorphism SuperMorphism::make(const FinSuperspace& source, const SuperDomain& target,
                                  std::vector<Superfunction> components,
                                  std::optional<std::vector<Superfunction>> coeff_images) {
    if (source.is_ambient()) return build(source.ambient(), std::nullopt, target, std::move(components), std::move(coeff_images));
    return build(source.ambient(), source, target, std::move(components), std::move(coeff_images));
}

SuperMorphism SuperMorphism::build(const SuperDomain& source, std::optional<FinSuperspace> space,
                                   const SuperDomain& target, std::vector<Superfunction> components,
                                   std::optional<std::vector<Superfunction>> coeff_images) {
    if (source.field() != target.field()) throw FieldError("morphism between domains over different fields");
    std::size_t p = target.p(), q = target.q();
    if (components.size() != p + q)
        throw ContextError("morphism into " + target.to_string() + " needs " + std::to_string(p + q) +
                           " components, got " + std::to_string(components.size()));
    const auto& tc = *target.coordinates();
    for (std::size_t a = 0; a < components.size(); ++a) {
        const auto& f = components[a];
        if (!(f.domain() == source)) throw ContextError("component lives on a different domain than the source");
        Parity want = a < p ? Parity::Even : Parity::Odd;
        const std::string& name = a < p ? tc.even_names()[a] : tc.odd_names()[a - p];
        if (!f.has_parity(want))
            throw ParityError("component " + name + " = " + f.to_string() + " is not " + superkernel::to_string(want));
        if (a < p && !f.is_k_valued())
            throw ValueFieldError("even component " + name + " = " + f.to_string() + " is not real valued");
    }

    const auto& TC = target.coeff();
    bool trusted = false;
    if (!coeff_images) {
        std::vector<Superfunction> imgs;
        if (target.has_trivial_coeff()) {
        } else if (source.coeff()->same_structure(*TC)) {
            for (std::size_t k = 0; k < TC->num_generators(); ++k)
                imgs.push_back(Superfunction::from_coefficient(source, TC->generator(k)));
        } else if (source.coeff()->factors() && source.coeff()->factors()->left->same_structure(*TC)) {
            auto inc = tensor_inclusion_left(source.coeff());
            for (const auto& img : inc.images()) imgs.push_back(Superfunction::from_coefficient(source, img));
        } else {
            throw ContextError("images of the target's coefficient generators are required");
        }
        coeff_images = std::move(imgs);
        trusted = true;
    }
    if (coeff_images->size() != TC->num_generators())
        throw ContextError("target coefficient algebra has " + std::to_string(TC->num_generators()) +
                           " generators, got " + std::to_string(coeff_images->size()) + " images");
    std::size_t ce = TC->context()->num_even();
    for (std::size_t k = 0; k < coeff_images->size(); ++k) {
        const auto& f = (*coeff_images)[k];
        if (!(f.domain() == source)) throw ContextError("coefficient image lives on a different domain than the source");
        Parity want = k < ce ? Parity::Even : Parity::Odd;
        if (!f.has_parity(want)) throw ParityError("coefficient image " + f.to_string() + " has the wrong parity");
    }
    if (space) {
        for (auto& f : components) f = space->normal_form(f);
        for (auto& f : *coeff_images) f = space->normal_form(f);
    }
    if (!trusted && TC->num_generators() > 0) {
        const auto& pres = TC->presentation();
        std::vector<Superfunction> ev(coeff_images->begin(), coeff_images->begin() + static_cast<std::ptrdiff_t>(ce));
        std::vector<Superfunction> od(coeff_images->begin() + static_cast<std::ptrdiff_t>(ce), coeff_images->end());
        auto check = [&](const SuperPolynomial& r) {
            Superfunction v = substitute_generators(r, ev, od, source);
            bool zero = space ? space->contains(v) : v.is_zero();
            if (!zero)
                throw NotAMorphismError("coefficient relation " + r.to_string() + " maps to " + v.to_string());
        };
        for (const auto& r : pres.relations) check(r);
        for (const auto& m : monomials_of_degree(*pres.ctx, pres.truncate + 1))
            check(SuperPolynomial::monomial(pres.ctx, m));
    }

    SuperMorphism phi(source, space, target);
    phi.components_ = std::move(components);
    phi.coeff_images_ = std::move(*coeff_images);
    auto reduced = reduced_even_components(phi.components_, p);
    std::vector<Box> boxes = space ? space->support() : std::vector<Box>{source.box()};
    auto report = verdict_with_locus(reduced, boxes, target.box(), space ? locus_of(*space) : std::vector<SuperPolynomial>{});
    if (report.verdict == MappingVerdict::Violated)
        throw MappingConditionError("source point " + point_string(*report.witness) + " maps outside " +
                                    box_to_string(target.box()));
    phi.verdict_ = report.verdict;
    return phi;
}

SuperMorphism SuperMorphism::identity(const SuperDomain& x) {
    auto comps = generator_functions(x, Parity::Even);
    comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(x.p()), comps.end());
    auto odd = generator_functions(x, Parity::Odd);
    comps.insert(comps.end(), odd.begin(), odd.begin() + static_cast<std::ptrdiff_t>(x.q()));
    return make(x, x, std::move(comps));
}

SuperMorphism SuperMorphism::inclusion(const FinSuperspace& y) {
    auto id = identity(y.ambient());
    return make(y, y.ambient(), id.components());
}

Superfunction SuperMorphism::pullback(const Superfunction& g) const {
    if (!(g.domain() == target_)) throw ContextError("pullback of a function on a different domain than the target");
    std::size_t p = target_.p(), ce = coeff_even_count(target_);
    std::vector<Superfunction> ev(components_.begin(), components_.begin() + static_cast<std::ptrdiff_t>(p));
    std::vector<Superfunction> od(components_.begin() + static_cast<std::ptrdiff_t>(p), components_.end());
    ev.insert(ev.end(), coeff_images_.begin(), coeff_images_.begin() + static_cast<std::ptrdiff_t>(ce));
    od.insert(od.end(), coeff_images_.begin() + static_cast<std::ptrdiff_t>(ce), coeff_images_.end());
    Superfunction r = substitute_generators(g.to_polynomial(), ev, od, source_);
    return space_ ? space_->normal_form(r) : r;
}

Point SuperMorphism::map_point(std::span<const mpq_class> x) const {
    if (x.size() != source_.p()) throw DomainError("point has the wrong dimension");
    Point y;
    for (std::size_t a = 0; a < target_.p(); ++a) y.push_back(evaluate_real(reduced_polynomial(components_[a]), x));
    return y;
}

std::string SuperMorphism::to_string() const {
    const auto& tc = *target_.coordinates();
    const auto& cc = *target_.coeff()->context();
    std::string s = "{ ";
    bool first = true;
    auto add = [&](const std::string& name, const Superfunction& f) {
        if (!first) s += ", ";
        first = false;
        s += name + " = " + f.to_string();
    };
    for (std::size_t a = 0; a < components_.size(); ++a)
        add(a < tc.num_even() ? tc.even_names()[a] : tc.odd_names()[a - tc.num_even()], components_[a]);
    for (std::size_t k = 0; k < coeff_images_.size(); ++k)
        add(k < cc.num_even() ? cc.even_names()[k] : cc.odd_names()[k - cc.num_even()], coeff_images_[k]);
    return s + (first ? "}" : " }");
}

bool operator==(const SuperMorphism& a, const SuperMorphism& b) {
    if (!(a.source_ == b.source_) || !(a.target_ == b.target_)) return false;
    if (a.space_.has_value() != b.space_.has_value()) return false;
    if (a.space_ && !a.space_->same_ideal(*b.space_)) return false;
    return a.components_ == b.components_ && a.coeff_images_ == b.coeff_images_;
}

SuperMorphism compose(const SuperMorphism& psi, const SuperMorphism& phi) {
    if (!(psi.source() == phi.target())) throw ContextError("compose: target of the first map is not the source of the second");
    if (psi.source_space())
        for (const auto& g : psi.source_space()->generators()) {
            auto v = phi.pullback(g);
            bool zero = phi.source_space() ? phi.source_space()->contains(v) : v.is_zero();
            if (!zero) throw NoFactorizationError("compose: the map does not land in the subspace " + psi.source_space()->to_string());
        }
    std::vector<Superfunction> comps, imgs;
    for (const auto& f : psi.components()) comps.push_back(phi.pullback(f));
    for (const auto& f : psi.coeff_images()) imgs.push_back(phi.pullback(f));
    if (phi.source_space()) return SuperMorphism::make(*phi.source_space(), psi.target(), std::move(comps), std::move(imgs));
    return SuperMorphism::make(phi.source(), psi.target(), std::move(comps), std::move(imgs));
}

// ---------------------------------------------------------------------------

CompatReport value_compat_check(const SuperMorphism& phi, Rng& rng, std::size_t functions) {
    CompatReport report;
    const SuperDomain& y = phi.target();
    const auto& ctx = y.coordinates();
    std::vector<SuperPolynomial> locus = phi.source_space() ? locus_of(*phi.source_space()) : std::vector<SuperPolynomial>{};
    std::vector<Box> boxes = phi.source_space() ? phi.source_space()->support() : std::vector<Box>{phi.source().box()};
    for (std::size_t n = 0; n < functions; ++n) {
        SuperPolynomial f(ctx);
        auto terms = rng.uniform(1, 4);
        for (std::int64_t t = 0; t < terms; ++t) {
            Monomial m;
            m.exps.assign(ctx->num_even(), 0);
            for (auto& e : m.exps) e = static_cast<std::uint16_t>(rng.uniform(0, 2));
            if (ctx->num_odd() && rng.coin(30)) m.odd = OddSet{1} << rng.uniform(0, static_cast<std::int64_t>(ctx->num_odd()) - 1);
            f.add_term(m, Scalar(rng.uniform(-3, 3)));
        }
        Superfunction g = Superfunction::from_polynomial(y, f);
        Superfunction pulled = phi.pullback(g);
        for (const auto& box : boxes)
            for (const auto& x : sample_points(box, 32)) {
                if (!locus.empty() && !on_locus(locus, x)) continue;
                Point image = phi.map_point(x);
                if (!box_contains(y.box(), image)) continue;
                ++report.checks;
                Scalar lhs = value_at(pulled, x), rhs = value_at(g, image);
                if (!(lhs == rhs))
                    report.failures.push_back("f = " + g.to_string() + " at " + point_string(x) + ": " + lhs.to_string() +
                                              " != " + rhs.to_string());
            }
    }
    return report;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Superfunction> coeff_inclusion(const SuperDomain& prod, const SuperDomain& factor, bool left,
                                           bool other_trivial) {
    std::vector<Superfunction> out;
    if (factor.has_trivial_coeff()) return out;
    if (other_trivial) {
        for (std::size_t k = 0; k < factor.coeff()->num_generators(); ++k)
            out.push_back(Superfunction::from_coefficient(prod, prod.coeff()->generator(k)));
        return out;
    }
    auto inc = left ? tensor_inclusion_left(prod.coeff()) : tensor_inclusion_right(prod.coeff());
    for (const auto& img : inc.images()) out.push_back(Superfunction::from_coefficient(prod, img));
    return out;
}

std::vector<Superfunction> slice(const std::vector<Superfunction>& v, std::size_t from, std::size_t to) {
    return {v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(to)};
}

}  // namespace

std::pair<SuperMorphism, SuperMorphism> product_projections(const SuperDomain& x, const SuperDomain& y) {
    SuperDomain prod = product(x, y);
    auto ev = generator_functions(prod, Parity::Even), od = generator_functions(prod, Parity::Odd);
    auto c1 = slice(ev, 0, x.p()), c2 = slice(ev, x.p(), x.p() + y.p());
    auto o1 = slice(od, 0, x.q()), o2 = slice(od, x.q(), x.q() + y.q());
    c1.insert(c1.end(), o1.begin(), o1.end());
    c2.insert(c2.end(), o2.begin(), o2.end());
    auto p1 = SuperMorphism::make(prod, x, c1, coeff_inclusion(prod, x, true, y.has_trivial_coeff()));
    auto p2 = SuperMorphism::make(prod, y, c2, coeff_inclusion(prod, y, false, x.has_trivial_coeff()));
    return {p1, p2};
}

SuperMorphism pairing(const SuperMorphism& a, const SuperMorphism& b) {
    if (!(a.source() == b.source())) throw ContextError("pairing: maps have different sources");
    SuperDomain prod = product(a.target(), b.target());
    std::size_t pa = a.target().p(), pb = b.target().p();
    auto comps = slice(a.components(), 0, pa);
    auto bev = slice(b.components(), 0, pb);
    comps.insert(comps.end(), bev.begin(), bev.end());
    auto aod = slice(a.components(), pa, a.components().size()), bod = slice(b.components(), pb, b.components().size());
    comps.insert(comps.end(), aod.begin(), aod.end());
    comps.insert(comps.end(), bod.begin(), bod.end());
    std::vector<Superfunction> imgs;
    if (a.target().has_trivial_coeff()) {
        imgs = b.coeff_images();
    } else if (b.target().has_trivial_coeff()) {
        imgs = a.coeff_images();
    } else {
        std::size_t ea = coeff_even_count(a.target()), eb = coeff_even_count(b.target());
        imgs = slice(a.coeff_images(), 0, ea);
        auto t = slice(b.coeff_images(), 0, eb);
        imgs.insert(imgs.end(), t.begin(), t.end());
        t = slice(a.coeff_images(), ea, a.coeff_images().size());
        imgs.insert(imgs.end(), t.begin(), t.end());
        t = slice(b.coeff_images(), eb, b.coeff_images().size());
        imgs.insert(imgs.end(), t.begin(), t.end());
    }
    if (a.source_space()) return SuperMorphism::make(*a.source_space(), prod, std::move(comps), std::move(imgs));
    return SuperMorphism::make(a.source(), prod, std::move(comps), std::move(imgs));
}

SuperMorphism thickening_embedding(const SuperDomain& x, const WeilPtr& a) {
    SuperDomain xa = weil_thicken(x, a);
    if (xa == x) return SuperMorphism::identity(x);
    auto comps = SuperMorphism::identity(x).components();
    std::vector<Superfunction> imgs;
    const auto& C = *x.coeff();
    std::size_t ce = C.context()->num_even(), ae = a->context()->num_even();
    auto cev = generator_functions(x, Parity::Even), cod = generator_functions(x, Parity::Odd);
    // target coefficient generators: C even, A even, C odd, A odd
    for (std::size_t k = 0; k < ce; ++k) imgs.push_back(cev[x.p() + k]);
    for (std::size_t k = 0; k < ae; ++k) imgs.emplace_back(x);
    for (std::size_t k = 0; k < C.num_generators() - ce; ++k) imgs.push_back(cod[x.q() + k]);
    for (std::size_t k = 0; k < a->num_generators() - ae; ++k) imgs.emplace_back(x);
    return SuperMorphism::make(x, xa, std::move(comps), std::move(imgs));
}

SuperMorphism thickening_retraction(const SuperDomain& x, const WeilPtr& a) {
    SuperDomain xa = weil_thicken(x, a);
    if (xa == x) return SuperMorphism::identity(x);
    auto comps = slice(generator_functions(xa, Parity::Even), 0, x.p());
    auto od = slice(generator_functions(xa, Parity::Odd), 0, x.q());
    comps.insert(comps.end(), od.begin(), od.end());
    return SuperMorphism::make(xa, x, std::move(comps));
}

// ---------------------------------------------------------------------------

WeilDecomposition decompose_weil(const SuperMorphism& phi, const WeilPtr& a) {
    if (phi.source_space()) throw ContextError("decompose_weil: source must be a domain");
    if (!phi.target().has_trivial_coeff())
        throw ContextError("decompose_weil: target must have a trivial coefficient algebra");
    const SuperDomain& src = phi.source();
    WeilPtr A;
    SuperDomain s = src.with_coeff(nullptr);
    std::function<std::size_t(std::size_t, std::size_t)> index;
    if (!a || src.coeff()->same_structure(*a)) {
        A = src.coeff();
        index = [](std::size_t, std::size_t j) { return j; };
    } else {
        const auto& f = src.coeff()->factors();
        if (!f || !f->right->same_structure(*a))
            throw ContextError("decompose_weil: source is not a thickening by the given algebra");
        A = a;
        s = src.with_coeff(f->left);
        index = [&f](std::size_t i, std::size_t j) { return f->at(i, j); };
    }
    std::size_t dc = s.coeff()->dim();
    WeilDecomposition out{A, SuperMorphism::identity(s), {}};
    std::vector<Superfunction> base;
    for (const auto& comp : phi.components()) {
        std::vector<Superfunction> row;
        for (std::size_t j = 0; j < A->dim(); ++j) {
            std::vector<SuperPolynomial> parts;
            for (std::size_t i = 0; i < dc; ++i) parts.push_back(comp.part(index(i, j)));
            Superfunction sj(s, std::move(parts));
            if (j == 0) base.push_back(std::move(sj));
            else row.push_back(std::move(sj));
        }
        out.table.push_back(std::move(row));
    }
    out.base = SuperMorphism::make(s, phi.target(), std::move(base));
    return out;
}

SuperMorphism recompose_weil(const WeilDecomposition& d) {
    const SuperDomain& s = d.base.source();
    SuperDomain src = weil_thicken(s, d.algebra);
    const auto& A = d.algebra;
    std::size_t dc = s.coeff()->dim();
    const auto& f = src.coeff()->factors();
    auto index = [&](std::size_t i, std::size_t j) { return (s.has_trivial_coeff() || !f) ? j : f->at(i, j); };
    if (d.table.size() != d.base.components().size()) throw ContextError("recompose_weil: table has the wrong size");
    std::vector<Superfunction> comps;
    for (std::size_t a = 0; a < d.table.size(); ++a) {
        if (d.table[a].size() + 1 != A->dim()) throw ContextError("recompose_weil: table row has the wrong size");
        std::vector<SuperPolynomial> parts(src.coeff()->dim(), SuperPolynomial(src.coordinates()));
        for (std::size_t j = 0; j < A->dim(); ++j) {
            const Superfunction& sj = j == 0 ? d.base.component(a) : d.table[a][j - 1];
            if (!(sj.domain() == s)) throw ContextError("recompose_weil: entry on a different domain");
            for (std::size_t i = 0; i < dc; ++i) parts[index(i, j)] += sj.part(i);
        }
        comps.emplace_back(src, std::move(parts));
    }
    return SuperMorphism::make(src, d.base.target(), std::move(comps));
}

}  // namespace superkernel
