#include "superkernel/weil_functor.hpp"

#include "superkernel/errors.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace superkernel {

namespace {

bool is_trivial(const WeilPtr& a) { return a->dim() == 1 && a->num_generators() == 0; }

Superfunction coord(const SuperDomain& x, std::size_t flat) {
    return flat < x.p() ? Superfunction::even_coordinate(x, flat) : Superfunction::odd_coordinate(x, flat - x.p());
}

std::size_t num_coords(const SuperDomain& x) { return x.p() + x.q(); }

Parity coord_parity(const SuperDomain& x, std::size_t flat) { return flat < x.p() ? Parity::Even : Parity::Odd; }

const std::string& coord_name(const SuperDomain& x, std::size_t flat) {
    const auto& c = *x.coordinates();
    return flat < x.p() ? c.even_names()[flat] : c.odd_names()[flat - x.p()];
}

std::string stripped(std::string s) {
    std::erase_if(s, [](char c) { return c == '*' || c == '^'; });
    return s;
}

std::set<std::string> names_of(const Context& c) {
    std::set<std::string> out(c.even_names().begin(), c.even_names().end());
    out.insert(c.odd_names().begin(), c.odd_names().end());
    return out;
}

std::string fresh(const std::string& base, std::set<std::string>& taken) {
    std::string cand = base;
    for (int k = 2; taken.count(cand); ++k) cand = base + "_" + std::to_string(k);
    taken.insert(cand);
    return cand;
}

/// The same algebra with generators renamed away from `taken`; the basis
/// order does not depend on names, so indices carry over.
WeilPtr renamed_apart(const WeilPtr& a, const std::set<std::string>& taken) {
    const auto& c = *a->context();
    bool clash = false;
    for (const auto& n : names_of(c)) clash = clash || taken.count(n);
    if (!clash) return a;
    std::set<std::string> used = taken;
    used.insert(c.even_names().begin(), c.even_names().end());
    used.insert(c.odd_names().begin(), c.odd_names().end());
    auto rename = [&](const std::vector<std::string>& names) {
        std::vector<std::string> out;
        for (const auto& n : names) out.push_back(taken.count(n) ? fresh(n, used) : n);
        return out;
    };
    WeilPresentation p;
    p.ctx = Context::make(rename(c.even_names()), rename(c.odd_names()), c.field());
    p.truncate = a->presentation().truncate;
    for (const auto& r : a->presentation().relations) p.relations.push_back(r.rebased(p.ctx));
    auto out = WeilAlgebra::build(p);
    if (out->dim() != a->dim()) throw ContextError("renaming changed the algebra");
    return out;
}

/// Basis index of e^b inside the coefficient algebra of the thickened total.
std::size_t thick_index(const SuperDomain& z, const SuperDomain& base, std::size_t i, std::size_t b) {
    if (base.has_trivial_coeff()) return b;
    return z.coeff()->factors()->at(i, b);
}

WeilPtr over_field_of(const WeilPtr& a, const SuperDomain& x) {
    if (a->field() == x.field()) return a;
    if (x.field() == Field::Complex) return complexify(a);
    throw FieldError("Weil functor: complex algebra over a real domain");
}

std::vector<Superfunction> flat_components(const SuperDomain& target, std::vector<std::optional<Superfunction>> comps) {
    std::vector<Superfunction> out;
    for (std::size_t k = 0; k < comps.size(); ++k) {
        if (!comps[k]) throw ContextError("missing component for " + coord_name(target, k));
        out.push_back(std::move(*comps[k]));
    }
    return out;
}

}  // namespace

std::string WeilBundle::fibre_dim() const { return std::to_string(fibre_even()) + "|" + std::to_string(fibre_odd()); }

const std::string& WeilBundle::coordinate_name(std::size_t a, std::size_t b) const {
    return coord_name(total, slot.at(a).at(b));
}

WeilBundle apply_object(const WeilPtr& a_in, const SuperDomain& x) {
    WeilPtr A = over_field_of(a_in, x);
    std::size_t r = A->dim_even() - 1, s = A->dim_odd();
    if (x.field() == Field::Complex && x.p() * r + x.q() * s != 0)
        throw CsRepresentabilityError("T^A X over a complex domain needs a purely odd fibre, got " +
                                      std::to_string(x.p() * r + x.q() * s) + "|" +
                                      std::to_string(x.p() * s + x.q() * r));
    std::size_t n = num_coords(x), m = A->dim();
    std::vector<std::vector<std::size_t>> slot(n, std::vector<std::size_t>(m));
    if (is_trivial(A)) {
        for (std::size_t a = 0; a < n; ++a) slot[a][0] = a;
        auto id = SuperMorphism::identity(x);
        return WeilBundle{x, A, x, id, id, std::move(slot), id};
    }

    std::set<std::string> taken = names_of(*x.coordinates());
    auto coeff_names = names_of(*x.coeff()->context());
    taken.insert(coeff_names.begin(), coeff_names.end());
    std::vector<std::string> even = x.coordinates()->even_names(), odd = x.coordinates()->odd_names();
    std::vector<std::pair<std::size_t, std::size_t>> even_slots, odd_slots;
    for (std::size_t b = 1; b < m; ++b)
        for (std::size_t a = 0; a < n; ++a) {
            std::string name = fresh(coord_name(x, a) + "_" + stripped(A->basis_name(b)), taken);
            bool is_odd = (coord_parity(x, a) == Parity::Odd) != (A->basis_parity(b) == Parity::Odd);
            (is_odd ? odd : even).push_back(name);
            (is_odd ? odd_slots : even_slots).emplace_back(a, b);
        }
    std::size_t pe = even.size();
    for (std::size_t a = 0; a < n; ++a) slot[a][0] = a < x.p() ? a : pe + (a - x.p());
    for (std::size_t k = 0; k < even_slots.size(); ++k) slot[even_slots[k].first][even_slots[k].second] = x.p() + k;
    for (std::size_t k = 0; k < odd_slots.size(); ++k)
        slot[odd_slots[k].first][odd_slots[k].second] = pe + x.q() + k;

    Box box = x.box();
    box.resize(pe, Interval::line());
    SuperDomain total(Context::make(std::move(even), std::move(odd), x.field()), std::move(box), x.coeff());

    std::vector<Superfunction> proj;
    for (std::size_t a = 0; a < n; ++a) proj.push_back(coord(total, slot[a][0]));
    std::vector<std::optional<Superfunction>> sec(num_coords(total));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < m; ++b) sec[slot[a][b]] = b == 0 ? coord(x, a) : Superfunction(x);
    auto projection = SuperMorphism::make(total, x, std::move(proj));
    auto section = SuperMorphism::make(x, total, flat_components(total, std::move(sec)));

    auto taken_z = names_of(*total.coordinates());
    taken_z.insert(coeff_names.begin(), coeff_names.end());
    SuperDomain z = weil_thicken(total, renamed_apart(A, taken_z));
    std::vector<Superfunction> gen;
    for (std::size_t a = 0; a < n; ++a) {
        Superfunction f = coord(z, slot[a][0]);
        for (std::size_t b = 1; b < m; ++b)
            f += coord(z, slot[a][b]) * Superfunction::from_coefficient(z, z.coeff()->basis_element(thick_index(z, x, 0, b)));
        gen.push_back(std::move(f));
    }
    auto generic = SuperMorphism::make(z, x, std::move(gen));
    return WeilBundle{x, A, total, projection, section, std::move(slot), generic};
}

std::vector<Superfunction> prolong(const WeilBundle& bundle, const Superfunction& f) {
    if (!(f.domain() == bundle.base)) throw ContextError("prolong: function is not on the base");
    if (is_trivial(bundle.algebra)) return {f};
    Superfunction g = bundle.generic().pullback(f);
    const SuperDomain& z = bundle.generic().source();
    std::size_t dc = bundle.base.coeff()->dim();
    std::vector<Superfunction> out;
    for (std::size_t b = 0; b < bundle.algebra->dim(); ++b) {
        std::vector<SuperPolynomial> parts;
        for (std::size_t i = 0; i < dc; ++i) parts.push_back(g.part(thick_index(z, bundle.base, i, b)));
        out.emplace_back(bundle.total, std::move(parts));
    }
    return out;
}

SuperMorphism apply_morphism(const WeilPtr& a, const SuperMorphism& psi) {
    if (psi.source_space()) throw ContextError("Weil functor: source must be a domain");
    auto tx = apply_object(a, psi.source());
    auto ty = apply_object(a, psi.target());
    std::vector<std::optional<Superfunction>> comps(num_coords(ty.total));
    for (std::size_t c = 0; c < psi.components().size(); ++c) {
        auto parts = prolong(tx, psi.component(c));
        for (std::size_t b = 0; b < parts.size(); ++b) comps[ty.slot[c][b]] = std::move(parts[b]);
    }
    std::vector<Superfunction> imgs;
    for (const auto& f : psi.coeff_images()) imgs.push_back(tx.projection.pullback(f));
    return SuperMorphism::make(tx.total, ty.total, flat_components(ty.total, std::move(comps)), std::move(imgs));
}

NatTransData nat_data(const AlgebraMorphism& phi) {
    const auto& A = *phi.source();
    const auto& B = *phi.target();
    std::vector<std::vector<Scalar>> matrix(B.dim() - 1, std::vector<Scalar>(A.dim() - 1));
    for (std::size_t b = 1; b < A.dim(); ++b) {
        const auto& img = phi.basis_image(b);
        for (std::size_t c = 1; c < B.dim(); ++c) matrix[c - 1][b - 1] = img[c];
    }
    return NatTransData{phi, std::move(matrix)};
}

SuperMorphism nat_transform(const AlgebraMorphism& phi, const SuperDomain& x) {
    auto ta = apply_object(phi.source(), x);
    auto tb = apply_object(phi.target(), x);
    auto data = nat_data(phi);
    std::vector<std::optional<Superfunction>> comps(num_coords(tb.total));
    for (std::size_t a = 0; a < num_coords(x); ++a) {
        comps[tb.slot[a][0]] = coord(ta.total, ta.slot[a][0]);
        for (std::size_t c = 1; c < tb.algebra->dim(); ++c) {
            Superfunction f(ta.total);
            for (std::size_t b = 1; b < ta.algebra->dim(); ++b)
                if (!data.matrix[c - 1][b - 1].is_zero()) f += data.matrix[c - 1][b - 1] * coord(ta.total, ta.slot[a][b]);
            comps[tb.slot[a][c]] = std::move(f);
        }
    }
    return SuperMorphism::make(ta.total, tb.total, flat_components(tb.total, std::move(comps)));
}

BundleIso compose_iso(const WeilPtr& a, const WeilPtr& b, const SuperDomain& x) {
    auto ab = apply_object(WeilAlgebra::tensor(over_field_of(a, x), over_field_of(b, x)), x);
    auto tb = apply_object(b, x);
    auto tatb = apply_object(a, tb.total);
    const auto& AB = *ab.algebra;
    std::size_t n = num_coords(x);
    auto at = [&](std::size_t i, std::size_t j) { return AB.factors()->at(i, j); };
    std::vector<std::optional<Superfunction>> fwd(num_coords(tatb.total)), bwd(num_coords(ab.total));
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t j = 0; j < tb.algebra->dim(); ++j)
            for (std::size_t i = 0; i < tatb.algebra->dim(); ++i) {
                std::size_t u = tb.slot[c][j];
                std::size_t k = ab.slot[c][at(i, j)];
                std::size_t l = tatb.slot[u][i];
                fwd[l] = coord(ab.total, k);
                bwd[k] = coord(tatb.total, l);
            }
    return BundleIso{SuperMorphism::make(ab.total, tatb.total, flat_components(tatb.total, std::move(fwd))),
                     SuperMorphism::make(tatb.total, ab.total, flat_components(ab.total, std::move(bwd)))};
}

BundleIso product_iso(const WeilPtr& a, const SuperDomain& x, const SuperDomain& y) {
    SuperDomain xy = product(x, y);
    auto tp = apply_object(a, xy);
    auto tx = apply_object(a, x);
    auto ty = apply_object(a, y);
    SuperDomain q = product(tx.total, ty.total);
    // flat coordinate of a factor inside a product: evens of x, evens of y, odds of x, odds of y
    auto in_product = [](const SuperDomain& px, const SuperDomain& py, bool right, std::size_t flat) {
        const SuperDomain& f = right ? py : px;
        if (flat < f.p()) return (right ? px.p() : 0) + flat;
        return px.p() + py.p() + (right ? px.q() : 0) + (flat - f.p());
    };
    std::vector<std::optional<Superfunction>> fwd(num_coords(q)), bwd(num_coords(tp.total));
    for (int side = 0; side < 2; ++side) {
        const auto& tf = side ? ty : tx;
        for (std::size_t c = 0; c < num_coords(tf.base); ++c)
            for (std::size_t b = 0; b < tp.algebra->dim(); ++b) {
                std::size_t k = tp.slot[in_product(x, y, side, c)][b];
                std::size_t l = in_product(tx.total, ty.total, side, tf.slot[c][b]);
                fwd[l] = coord(tp.total, k);
                bwd[k] = coord(q, l);
            }
    }
    return BundleIso{SuperMorphism::make(tp.total, q, flat_components(q, std::move(fwd))),
                     SuperMorphism::make(q, tp.total, flat_components(tp.total, std::move(bwd)))};
}

Superfunction change_coefficients(const Superfunction& f, const AlgebraMorphism& r) {
    const SuperDomain& x = f.domain();
    if (!x.coeff()->same_structure(*r.source())) throw ContextError("change of coefficients: algebra mismatch");
    SuperDomain to = x.with_coeff(r.target());
    Superfunction out(to);
    for (std::size_t i = 0; i < f.parts().size(); ++i)
        if (!f.part(i).is_zero())
            out += Superfunction::from_polynomial(to, f.part(i)) * Superfunction::from_coefficient(to, r.basis_image(i));
    return out;
}

SuperDomain base_change(const AlgebraMorphism& r, const SuperDomain& x) {
    if (!x.coeff()->same_structure(*r.source())) throw ContextError("base change: domain is not over the source of r");
    return x.with_coeff(r.target());
}

SuperMorphism base_change(const AlgebraMorphism& r, const SuperMorphism& psi) {
    if (psi.source_space()) throw ContextError("base change: source must be a domain");
    const SuperDomain& x = psi.source();
    if (!psi.target().coeff()->same_structure(*r.source())) throw ContextError("base change: target is not over S");
    auto cev = generator_functions(x, Parity::Even), cod = generator_functions(x, Parity::Odd);
    std::vector<Superfunction> ident(cev.begin() + static_cast<std::ptrdiff_t>(x.p()), cev.end());
    ident.insert(ident.end(), cod.begin() + static_cast<std::ptrdiff_t>(x.q()), cod.end());
    if (!(psi.coeff_images() == ident)) throw ContextError("base change: morphism is not over S");
    std::vector<Superfunction> comps;
    for (const auto& f : psi.components()) comps.push_back(change_coefficients(f, r));
    return SuperMorphism::make(base_change(r, x), base_change(r, psi.target()), std::move(comps));
}

BaseChange base_change(const AlgebraMorphism& r, const WeilBundle& bundle) {
    SuperDomain pulled = base_change(r, bundle.total);
    auto b = apply_object(bundle.algebra, base_change(r, bundle.base));
    std::vector<Superfunction> fwd, bwd;
    for (std::size_t k = 0; k < num_coords(pulled); ++k) {
        fwd.push_back(coord(pulled, k));
        bwd.push_back(coord(b.total, k));
    }
    BundleIso iso{SuperMorphism::make(pulled, b.total, std::move(fwd)),
                  SuperMorphism::make(b.total, pulled, std::move(bwd))};
    return BaseChange{pulled, std::move(b), std::move(iso)};
}

WeilBundle tangent(const SuperDomain& x) { return apply_object(dual_numbers(Field::Real), x); }

CompatReport derivation_check(const SuperMorphism& psi, Rng& rng, std::size_t functions) {
    CompatReport report;
    auto tx = tangent(psi.source());
    auto ty = tangent(psi.target());
    auto tpsi = apply_morphism(dual_numbers(Field::Real), psi);
    const SuperDomain& y = psi.target();
    const auto& ctx = y.coordinates();
    auto random_function = [&] {
        SuperPolynomial f(ctx);
        auto terms = rng.uniform(1, 4);
        for (std::int64_t t = 0; t < terms; ++t) {
            Monomial m;
            m.exps.assign(ctx->num_even(), 0);
            for (auto& e : m.exps) e = static_cast<std::uint16_t>(rng.uniform(0, 2));
            if (ctx->num_odd() && rng.coin(30))
                m.odd = OddSet{1} << rng.uniform(0, static_cast<std::int64_t>(ctx->num_odd()) - 1);
            f.add_term(m, Scalar(rng.uniform(-3, 3)));
        }
        return Superfunction::from_polynomial(y, f);
    };
    auto delta = [&](const Superfunction& f) { return prolong(tx, psi.pullback(f))[1]; };
    auto base = [&](const Superfunction& f) { return tx.projection.pullback(psi.pullback(f)); };
    for (std::size_t n = 0; n < functions; ++n) {
        Superfunction f = random_function(), g = random_function();
        ++report.checks;
        if (!(delta(f * g) == base(f) * delta(g) + delta(f) * base(g)))
            report.failures.push_back("Leibniz rule fails for f = " + f.to_string() + ", g = " + g.to_string());
        ++report.checks;
        if (!(delta(f) == tpsi.pullback(prolong(ty, f)[1])))
            report.failures.push_back("fibre part of T psi disagrees on f = " + f.to_string());
    }
    return report;
}

}  // namespace superkernel
