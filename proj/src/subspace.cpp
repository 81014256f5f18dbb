#include "superkernel/subspace.hpp"

#include "superkernel/errors.hpp"
#include "superkernel/interval_eval.hpp"
#include "superkernel/real_roots.hpp"

namespace superkernel {

namespace {

/// Substitutes the coordinates whose interval is a single point.
SuperPolynomial fix_points(const SuperPolynomial& f, const Box& box) {
    SuperPolynomial out(f.context());
    for (const auto& [m, c] : f.terms()) {
        Monomial r = m;
        Scalar v = c;
        for (std::size_t k = 0; k < m.exps.size(); ++k) {
            if (!m.exps[k] || !box[k].lo || !box[k].hi || *box[k].lo != *box[k].hi) continue;
            mpq_class x = *box[k].lo;
            mpq_class pw = 1;
            for (unsigned e = 0; e < m.exps[k]; ++e) pw *= x;
            v *= Scalar(pw);
            r.exps[k] = 0;
        }
        out.add_term(r, v);
    }
    return out;
}

std::vector<std::size_t> variables(const SuperPolynomial& f) {
    std::vector<bool> seen(f.context()->num_even(), false);
    for (const auto& [m, c] : f.terms())
        for (std::size_t k = 0; k < m.exps.size(); ++k)
            if (m.exps[k]) seen[k] = true;
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < seen.size(); ++k)
        if (seen[k]) out.push_back(k);
    return out;
}

void narrow(Box box, std::vector<bool> settled, const std::vector<SuperPolynomial>& constraints,
            std::vector<Box>& out) {
    for (const auto& g : constraints) {
        SuperPolynomial f = fix_points(g, box);
        if (f.is_zero()) continue;
        auto vars = variables(f);
        if (vars.empty()) return;  // nonzero constant
        if (vars.size() == 1) {
            std::size_t k = vars[0];
            if (settled[k]) continue;
            UnivariatePoly u;
            for (const auto& [m, c] : f.terms()) {
                if (u.size() <= m.exps[k]) u.resize(m.exps[k] + 1u);
                u[m.exps[k]] = c.re();
            }
            auto roots = isolate_real_roots(u, box[k]);
            settled[k] = true;
            for (const auto& r : roots) {
                Box b = box;
                b[k] = r.as_interval();
                narrow(std::move(b), settled, constraints, out);
            }
            return;
        }
        if (evaluate_range(f, box).excludes_zero()) return;
    }
    out.push_back(std::move(box));
}

}  // namespace

std::vector<Box> narrow_support(const Box& box, const std::vector<SuperPolynomial>& constraints) {
    std::vector<Box> out;
    narrow(box, std::vector<bool>(box.size(), false), constraints, out);
    return out;
}

std::vector<SuperPolynomial> coefficient_relations(const SuperDomain& x) {
    std::vector<SuperPolynomial> out;
    if (x.has_trivial_coeff()) return out;
    const auto& ctx = x.combined_context();
    const auto& pres = x.coeff()->presentation();
    std::size_t p = x.p(), q = x.q();
    auto embed = [&](const SuperPolynomial& f) {
        SuperPolynomial g(ctx);
        for (const auto& [m, c] : f.terms()) {
            Monomial n;
            n.exps.assign(p, 0);
            n.exps.insert(n.exps.end(), m.exps.begin(), m.exps.end());
            n.odd = m.odd << q;
            g.add_term(n, c);
        }
        return g;
    };
    for (const auto& r : pres.relations) out.push_back(embed(r));
    for (const auto& m : monomials_of_degree(*pres.ctx, pres.truncate + 1))
        out.push_back(embed(SuperPolynomial::monomial(pres.ctx, m)));
    return out;
}

FinSuperspace::FinSuperspace(SuperDomain ambient, std::vector<Superfunction> generators,
                             std::optional<int> degree_cap) {
    auto d = std::make_shared<Data>(Data{ambient, {}, {}, nullptr});
    std::vector<SuperPolynomial> polys;
    std::vector<SuperPolynomial> constraints;
    for (auto& g : generators) {
        if (!(g.domain() == ambient)) throw ContextError("ideal generator lives on a different domain");
        auto par = g.parity();
        if (!par) throw ParityError("ideal generator " + g.to_string() + " is not homogeneous");
        if (g.is_zero()) continue;
        polys.push_back(g.to_polynomial());
        if (*par == Parity::Even) {
            SuperPolynomial r = reduced_polynomial(g);
            SuperPolynomial re(r.context()), im(r.context());
            for (const auto& [m, c] : r.terms()) {
                re.add_term(m, Scalar(c.re()));
                im.add_term(m, Scalar(c.im()));
            }
            if (!re.is_zero()) constraints.push_back(std::move(re));
            if (!im.is_zero()) constraints.push_back(std::move(im));
        }
        d->generators.push_back(std::move(g));
    }
    for (auto& r : coefficient_relations(ambient)) polys.push_back(std::move(r));
    d->ideal = std::make_shared<IdealBasis>(ambient.combined_context(), std::move(polys), degree_cap);
    d->support = narrow_support(ambient.box(), constraints);
    d_ = std::move(d);
}

FinSuperspace::Reduction FinSuperspace::reduce(const Superfunction& f) const {
    if (!(f.domain() == ambient())) throw ContextError("normal form of a function on a different domain");
    auto nf = d_->ideal->reduce(f.to_polynomial());
    return {Superfunction::from_combined(ambient(), nf.value), nf.bounded};
}

bool FinSuperspace::contains(const Superfunction& f) const {
    if (!(f.domain() == ambient())) throw ContextError("membership of a function on a different domain");
    return d_->ideal->contains(f.to_polynomial());
}

bool FinSuperspace::contains_polynomial(const SuperPolynomial& f) const { return d_->ideal->contains(f); }

bool FinSuperspace::contains(const FinSuperspace& o) const {
    if (!(o.ambient() == ambient())) throw ContextError("comparing ideals on different domains");
    for (const auto& g : o.generators())
        if (!contains(g)) return false;
    return true;
}

bool FinSuperspace::is_ambient() const { return d_->generators.empty(); }

std::string FinSuperspace::to_string() const {
    std::string s = "V(";
    for (std::size_t k = 0; k < generators().size(); ++k) {
        if (k) s += ", ";
        s += generators()[k].to_string();
    }
    s += ") in " + ambient().to_string();
    return s;
}

}  // namespace superkernel
