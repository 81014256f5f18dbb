#include "superkernel/limits.hpp"

#include "superkernel/errors.hpp"
#include "superkernel/linalg.hpp"

namespace superkernel {

const char* to_string(EmbeddingKind k) noexcept {
    switch (k) {
        case EmbeddingKind::Open: return "open";
        case EmbeddingKind::Closed: return "closed";
        case EmbeddingKind::General: return "general";
    }
    return "?";
}

namespace {

std::vector<Superfunction> coordinate_functions(const SuperDomain& x) { return SuperMorphism::identity(x).components(); }

bool is_zero_on(const SuperMorphism& m, const Superfunction& v) {
    return m.source_space() ? m.source_space()->contains(v) : v.is_zero();
}

/// img = c * y + d with y a single generator function; returns (c, d).
std::optional<std::pair<Scalar, Scalar>> affine_multiple(const Superfunction& img, const Superfunction& y) {
    std::size_t b0 = 0;
    while (b0 < y.parts().size() && y.part(b0).is_zero()) ++b0;
    if (b0 == y.parts().size()) return std::nullopt;
    const Monomial& m0 = y.part(b0).terms().begin()->first;
    Scalar c = img.part(b0).coefficient(m0);
    if (c.is_zero()) return std::nullopt;
    Scalar d = img.part(0).constant_term();
    if (!(img - Superfunction::constant(img.domain(), d) - y * c).is_zero()) return std::nullopt;
    return std::make_pair(c, d);
}

/// The images j^#(x) of the generators of X's combined context.
std::pair<std::vector<Superfunction>, std::vector<Superfunction>> generator_images(const SuperMorphism& j) {
    const auto& x = j.target();
    std::size_t ce = x.coeff()->context()->num_even();
    std::vector<Superfunction> ev(j.components().begin(), j.components().begin() + static_cast<std::ptrdiff_t>(x.p()));
    std::vector<Superfunction> od(j.components().begin() + static_cast<std::ptrdiff_t>(x.p()), j.components().end());
    ev.insert(ev.end(), j.coeff_images().begin(), j.coeff_images().begin() + static_cast<std::ptrdiff_t>(ce));
    od.insert(od.end(), j.coeff_images().begin() + static_cast<std::ptrdiff_t>(ce), j.coeff_images().end());
    return {ev, od};
}

Interval affine_preimage(const Interval& iv, const Scalar& c, const Scalar& d) {
    // y = (x - d) / c
    mpq_class cr = c.re(), dr = d.re();
    Interval r;
    auto map = [&](const mpq_class& v) { return mpq_class((v - dr) / cr); };
    if (sgn(cr) > 0) {
        if (iv.lo) r.lo = map(*iv.lo);
        if (iv.hi) r.hi = map(*iv.hi);
        r.lo_closed = iv.lo_closed;
        r.hi_closed = iv.hi_closed;
    } else {
        if (iv.hi) r.lo = map(*iv.hi);
        if (iv.lo) r.hi = map(*iv.lo);
        r.lo_closed = iv.hi_closed;
        r.hi_closed = iv.lo_closed;
    }
    return r;
}

}  // namespace

EmbeddingData subspace_embedding(const FinSuperspace& y) {
    const auto& x = y.ambient();
    return {SuperMorphism::inclusion(y), EmbeddingKind::Closed, y, generator_functions(x, Parity::Even),
            generator_functions(x, Parity::Odd)};
}

EmbeddingData open_embedding(const SuperDomain& x, const Box& box) {
    SuperDomain z = restrict(x, box);
    auto j = SuperMorphism::make(z, x, coordinate_functions(z));
    return {j, EmbeddingKind::Open, FinSuperspace(x), {}, {}};
}

EmbeddingData classify_embedding(const SuperMorphism& j) {
    if (j.source_space()) throw ContextError("classify_embedding: source must be a domain");
    const SuperDomain& y = j.source();
    const SuperDomain& x = j.target();
    auto [img_ev, img_od] = generator_images(j);
    auto gx_ev = generator_functions(x, Parity::Even), gx_od = generator_functions(x, Parity::Odd);
    auto gy_ev = generator_functions(y, Parity::Even), gy_od = generator_functions(y, Parity::Odd);

    bool closed = true, box_matches = true;
    std::vector<Superfunction> inv_ev, inv_od;
    auto invert = [&](const std::vector<Superfunction>& gy, const std::vector<Superfunction>& imgs,
                      const std::vector<Superfunction>& gx, std::vector<Superfunction>& out, bool even) {
        for (std::size_t k = 0; k < gy.size() && closed; ++k) {
            bool found = false;
            for (std::size_t b = 0; b < imgs.size() && !found; ++b) {
                auto cd = affine_multiple(imgs[b], gy[k]);
                if (!cd) continue;
                found = true;
                out.push_back((gx[b] - Superfunction::constant(x, cd->second)) * cd->first.inverse());
                if (even && k < y.p()) {
                    // a coordinate of X pins the coordinate of Y: compare the boxes
                    if (b >= x.p() || !cd->first.is_k_valued() || !cd->second.is_k_valued() ||
                        !(affine_preimage(x.box()[b], cd->first, cd->second) == y.box()[k]))
                        box_matches = false;
                }
            }
            if (!found) closed = false;
        }
    };
    invert(gy_ev, img_ev, gx_ev, inv_ev, true);
    invert(gy_od, img_od, gx_od, inv_od, false);
    if (!closed) {
        bool is_restriction = y.coordinates()->same_as(*x.coordinates()) && y.coeff()->same_structure(*x.coeff()) &&
                              j.components() == coordinate_functions(y) && box_contains(x.box(), y.box());
        return {j, is_restriction ? EmbeddingKind::Open : EmbeddingKind::General, FinSuperspace(x), {}, {}};
    }
    std::vector<Superfunction> gens;
    auto add = [&](const Superfunction& g) {
        if (!g.is_zero()) gens.push_back(g);
    };
    for (std::size_t b = 0; b < gx_ev.size(); ++b)
        add(gx_ev[b] - substitute_generators(img_ev[b].to_polynomial(), inv_ev, inv_od, x));
    for (std::size_t b = 0; b < gx_od.size(); ++b)
        add(gx_od[b] - substitute_generators(img_od[b].to_polynomial(), inv_ev, inv_od, x));
    for (const auto& r : coefficient_relations(y)) add(substitute_generators(r, inv_ev, inv_od, x));
    FinSuperspace image(x, std::move(gens));
    EmbeddingKind kind = box_matches ? EmbeddingKind::Closed : EmbeddingKind::General;
    return {j, kind, image, std::move(inv_ev), std::move(inv_od)};
}

EmbeddingData equalizer(const SuperMorphism& phi, const SuperMorphism& psi) {
    if (!(phi.source() == psi.source()) || !(phi.target() == psi.target()))
        throw ContextError("equalizer: maps have different sources or targets");
    std::vector<Superfunction> gens;
    if (phi.source_space()) gens = phi.source_space()->generators();
    if (psi.source_space() && !(phi.source_space() && phi.source_space()->same_ideal(*psi.source_space())))
        for (const auto& g : psi.source_space()->generators()) gens.push_back(g);
    for (std::size_t a = 0; a < phi.components().size(); ++a) gens.push_back(phi.component(a) - psi.component(a));
    for (std::size_t k = 0; k < phi.coeff_images().size(); ++k)
        gens.push_back(phi.coeff_images()[k] - psi.coeff_images()[k]);
    return subspace_embedding(FinSuperspace(phi.source(), std::move(gens)));
}

FibreProduct fibre_product(const SuperMorphism& phi, const SuperMorphism& psi) {
    if (phi.source_space() || psi.source_space()) throw ContextError("fibre_product: sources must be domains");
    if (!(phi.target() == psi.target())) throw ContextError("fibre_product: maps have different targets");
    auto [p1, p2] = product_projections(phi.source(), psi.source());
    auto e = equalizer(compose(phi, p1), compose(psi, p2));
    auto q1 = SuperMorphism::make(e.image, phi.source(), p1.components(), p1.coeff_images());
    auto q2 = SuperMorphism::make(e.image, psi.source(), p2.components(), p2.coeff_images());
    return {std::move(e), std::move(q1), std::move(q2)};
}

FibreProduct fibre(const SuperMorphism& phi, const Point& z) {
    const SuperDomain& target = phi.target();
    if (z.size() != target.p()) throw DomainError("fibre: point has the wrong dimension");
    if (!box_contains(target.box(), z)) throw DomainError("fibre: point outside the target box");
    SuperDomain pt = SuperDomain::affine(0, 0, target.field());
    std::vector<Superfunction> comps;
    for (const auto& v : z) comps.push_back(Superfunction::constant(pt, Scalar(v)));
    for (std::size_t k = 0; k < target.q(); ++k) comps.emplace_back(pt);
    std::vector<Superfunction> imgs(target.coeff()->num_generators(), Superfunction(pt));
    return fibre_product(phi, SuperMorphism::make(pt, target, std::move(comps), std::move(imgs)));
}

SuperMorphism factor_through_embedding(const SuperMorphism& psi, const EmbeddingData& j) {
    const FinSuperspace& image = j.image;
    if (!(psi.target() == image.ambient())) throw ContextError("factor_through_embedding: psi does not map into the ambient");
    if (j.kind == EmbeddingKind::General) throw NoFactorizationError("embedding is not closed or open");
    for (const auto& g : image.generators()) {
        auto v = psi.pullback(g);
        if (!is_zero_on(psi, v))
            throw NoFactorizationError("ideal generator " + g.to_string() + " pulls back to " + v.to_string());
    }
    std::vector<Box> boxes = psi.source_space() ? psi.source_space()->support() : std::vector<Box>{psi.source().box()};
    for (const auto& box : boxes)
        for (const auto& x : sample_points(box, 64)) {
            if (psi.source_space()) {
                bool on = true;
                std::vector<Scalar> pt(x.begin(), x.end());
                for (const auto& g : psi.source_space()->generators())
                    if (g.has_parity(Parity::Even) && !reduced_polynomial(g).evaluate_reduced(pt).is_zero()) on = false;
                if (!on) continue;
            }
            Point y = psi.map_point(x);
            bool inside = false;
            for (const auto& b : image.support())
                if (box_contains(b, y)) inside = true;
            if (!inside) throw NoFactorizationError("a source point maps outside the support of the subspace");
        }
    try {
        if (j.map.source_space()) return psi;
        const SuperDomain& y = j.map.source();
        if (j.kind == EmbeddingKind::Open) {
            if (psi.source_space())
                return SuperMorphism::make(*psi.source_space(), y, psi.components(), psi.coeff_images());
            return SuperMorphism::make(psi.source(), y, psi.components(), psi.coeff_images());
        }
        std::vector<Superfunction> comps, imgs;
        std::size_t ye = y.p(), yo = y.q();
        for (std::size_t k = 0; k < ye; ++k) comps.push_back(psi.pullback(j.inverse_even[k]));
        for (std::size_t k = 0; k < yo; ++k) comps.push_back(psi.pullback(j.inverse_odd[k]));
        for (std::size_t k = ye; k < j.inverse_even.size(); ++k) imgs.push_back(psi.pullback(j.inverse_even[k]));
        for (std::size_t k = yo; k < j.inverse_odd.size(); ++k) imgs.push_back(psi.pullback(j.inverse_odd[k]));
        if (psi.source_space()) return SuperMorphism::make(*psi.source_space(), y, std::move(comps), std::move(imgs));
        return SuperMorphism::make(psi.source(), y, std::move(comps), std::move(imgs));
    } catch (const MappingConditionError& e) {
        throw NoFactorizationError(std::string("factorization violates the mapping condition: ") + e.what());
    }
}

SuperMorphism factor_cone(const FibreProduct& fp, const SuperMorphism& a, const SuperMorphism& b) {
    return factor_through_embedding(pairing(a, b), fp.embedding);
}

namespace {

/// A basis of the linear span, split by parity so every element stays
/// homogeneous.
std::vector<Superfunction> span_basis(const SuperDomain& x, const std::vector<Superfunction>& elements) {
    using Echelon = RowEchelon<Monomial, LeadingFirst>;
    Echelon spans[2];
    for (const auto& f : elements) {
        auto par = f.parity();
        if (!par || f.is_zero()) continue;
        auto v = spans[0].make_vector();
        SuperPolynomial poly = f.to_polynomial();
        for (const auto& [m, c] : poly.terms()) v.emplace(m, c);
        spans[static_cast<int>(*par)].insert(std::move(v));
    }
    std::vector<Superfunction> out;
    for (auto& e : spans) {
        e.fully_reduce();
        for (const auto& [lead, row] : e.rows()) {
            SuperPolynomial p(x.combined_context());
            for (const auto& [m, c] : row) p.add_term(m, c);
            out.push_back(Superfunction::from_combined(x, p));
        }
    }
    return out;
}

}  // namespace

FinSuperspace infinitesimal_neighbourhood(const EmbeddingData& j, int n) {
    if (n < 0) throw DomainError("infinitesimal_neighbourhood: negative order");
    const auto& gens = j.image.generators();
    const SuperDomain& x = j.image.ambient();
    std::vector<Superfunction> power = span_basis(x, gens);
    for (int k = 0; k < n && !power.empty(); ++k) {
        std::vector<Superfunction> next;
        for (const auto& p : power)
            for (const auto& g : gens) next.push_back(p * g);
        power = span_basis(x, next);
    }
    return FinSuperspace(x, std::move(power), j.image.degree_cap());
}

GirthResult girth_of_embedding(const EmbeddingData& j, int max_order) {
    const SuperDomain& x = j.image.ambient();
    std::vector<Superfunction> gens = span_basis(x, j.image.generators());
    if (gens.empty()) return {0, std::nullopt};
    for (const auto& g : gens)
        if (!reduced_polynomial(g).is_zero()) return {std::nullopt, g};
    std::vector<Superfunction> power = gens;
    for (int k = 1; k <= max_order; ++k) {
        std::vector<Superfunction> next;
        for (const auto& p : power)
            for (const auto& g : gens) next.push_back(p * g);
        power = span_basis(x, next);
        if (power.empty()) return {k, std::nullopt};
    }
    throw BoundedVerdict("girth_of_embedding: ideal powers still nonzero at order " + std::to_string(max_order));
}

std::optional<Elimination> eliminate_coordinates(const FinSuperspace& y) {
    const SuperDomain& x = y.ambient();
    const auto& ctx = *x.coordinates();
    auto coords = coordinate_functions(x);
    std::vector<bool> drop(coords.size(), false);
    std::vector<Superfunction> dropped;
    for (std::size_t a = 0; a < coords.size(); ++a)
        if (y.contains(coords[a])) {
            if (a < x.p() && !x.box()[a].contains(mpq_class(0))) return std::nullopt;
            drop[a] = true;
            dropped.push_back(coords[a]);
        }
    if (!FinSuperspace(x, dropped).contains(y)) return std::nullopt;
    std::vector<std::string> even, odd;
    Box box;
    for (std::size_t a = 0; a < coords.size(); ++a) {
        if (drop[a]) continue;
        if (a < x.p()) {
            even.push_back(ctx.even_names()[a]);
            box.push_back(x.box()[a]);
        } else {
            odd.push_back(ctx.odd_names()[a - x.p()]);
        }
    }
    SuperDomain d(Context::make(even, odd, x.field()), box, x.coeff());
    auto dcoords = coordinate_functions(d);
    std::vector<Superfunction> inc, proj;
    std::size_t next = 0;
    for (std::size_t a = 0; a < coords.size(); ++a) {
        if (drop[a]) inc.emplace_back(d);
        else {
            inc.push_back(dcoords[next++]);
            proj.push_back(coords[a]);
        }
    }
    return Elimination{d, SuperMorphism::make(d, x, std::move(inc)), SuperMorphism::make(y, d, std::move(proj))};
}

Tidied tidy(const FinSuperspace& y) {
    return {y, "stalks of polynomial structure sheaves are Noetherian, so m^inf = 0 and every ideal is closed"};
}

DiagonalNeighbourhood diagonal_neighbourhood(std::size_t p, int n, Field field) {
    SuperDomain base = SuperDomain::affine(p, 0, field);
    SuperDomain amb = SuperDomain::affine(2 * p, 0, field);
    std::vector<Superfunction> delta;
    for (std::size_t k = 0; k < 2 * p; ++k) delta.push_back(Superfunction::even_coordinate(base, k % p));
    auto diag = classify_embedding(SuperMorphism::make(base, amb, delta));
    auto nbh = infinitesimal_neighbourhood(diag, n);
    SuperDomain model = weil_thicken(base, multijet(static_cast<int>(p), 0, n, field));

    std::vector<Superfunction> to_comps, to_imgs;
    for (std::size_t k = 0; k < p; ++k) {
        auto xk = Superfunction::even_coordinate(amb, k), yk = Superfunction::even_coordinate(amb, p + k);
        to_comps.push_back(xk);
        to_imgs.push_back(xk - yk);
    }
    auto to_model = SuperMorphism::make(nbh, model, to_comps, to_imgs);
    std::vector<Superfunction> from_comps(2 * p, Superfunction(model));
    for (std::size_t k = 0; k < p; ++k) {
        auto tk = Superfunction::even_coordinate(model, k);
        auto Tk = Superfunction::from_coefficient(model, model.coeff()->generator(k));
        from_comps[k] = tk;
        from_comps[p + k] = tk - Tk;
    }
    auto from_model = SuperMorphism::make(model, amb, from_comps);
    return {std::move(diag), std::move(nbh), std::move(model), std::move(to_model), std::move(from_model)};
}

bool DiagonalNeighbourhood::verify() const {
    try {
        factor_through_embedding(from_model, subspace_embedding(neighbourhood));
        bool left = compose(to_model, from_model) == SuperMorphism::identity(model);
        bool right = compose(from_model, to_model) == SuperMorphism::inclusion(neighbourhood);
        return left && right;
    } catch (const NoFactorizationError&) {
        return false;
    }
}

}  // namespace superkernel
