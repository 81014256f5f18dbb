#include "superkernel/ideal.hpp"

#include "superkernel/errors.hpp"

#include <functional>

namespace superkernel {

namespace {

std::vector<int> odd_set_weights(std::size_t num_odd) {
    std::vector<int> w(std::size_t{1} << num_odd);
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = __builtin_popcountll(k);
    return w;
}

ModuleVector to_module(const SuperPolynomial& f, const SubmoduleBasis* basis,
                       const std::shared_ptr<const ModuleOrder>& order) {
    ModuleVector v = basis ? basis->empty_vector() : ModuleVector(LeadingTermFirst{order});
    for (const auto& [m, c] : f.terms()) v.emplace(ModuleTerm{m.exps, static_cast<std::uint32_t>(m.odd)}, c);
    return v;
}

std::vector<ModuleVector> module_generators(const ContextPtr& ctx,
                                            const std::vector<SuperPolynomial>& gens,
                                            const std::shared_ptr<const ModuleOrder>& order) {
    std::vector<ModuleVector> out;
    std::size_t subsets = std::size_t{1} << ctx->num_odd();
    for (const auto& g : gens) {
        require_same_context(ctx, g.context(), "IdealBasis");
        if (!g.parity()) throw ParityError("ideal generator " + g.to_string() + " is not homogeneous");
        for (std::size_t j = 0; j < subsets; ++j) {
            Monomial m;
            m.exps.assign(ctx->num_even(), 0);
            m.odd = j;
            SuperPolynomial prod = g * SuperPolynomial::monomial(ctx, m);
            if (!prod.is_zero()) out.push_back(to_module(prod, nullptr, order));
        }
    }
    return out;
}

}  // namespace

IdealBasis::IdealBasis(ContextPtr ctx, std::vector<SuperPolynomial> generators,
                       std::optional<int> degree_cap)
    : ctx_(std::move(ctx)),
      generators_(std::move(generators)),
      module_(ctx_->num_even(), odd_set_weights(ctx_->num_odd()),
              module_generators(ctx_, generators_,
                                std::make_shared<const ModuleOrder>(odd_set_weights(ctx_->num_odd()))),
              degree_cap) {}

IdealBasis::NormalForm IdealBasis::reduce(const SuperPolynomial& f) const {
    require_same_context(ctx_, f.context(), "normal_form");
    auto r = module_.reduce(to_module(f, &module_, nullptr));
    SuperPolynomial out(ctx_);
    for (const auto& [t, c] : r.remainder) out.add_term(Monomial{t.exps, t.pos}, c);
    return {std::move(out), r.bounded};
}

bool IdealBasis::contains(const IdealBasis& other) const {
    for (const auto& g : other.generators())
        if (!contains(g)) return false;
    return true;
}

SuperPolynomial normal_form(const SuperPolynomial& f, const IdealBasis& ideal) {
    return ideal.normal_form(f);
}

std::vector<SuperPolynomial> ideal_power(std::span<const SuperPolynomial> generators, unsigned k) {
    std::vector<SuperPolynomial> out;
    if (generators.empty()) return out;
    const ContextPtr& ctx = generators.front().context();
    if (k == 0) {
        out.push_back(SuperPolynomial::constant(ctx, Scalar(1)));
        return out;
    }
    std::function<void(std::size_t, unsigned, const SuperPolynomial&)> rec =
        [&](std::size_t start, unsigned left, const SuperPolynomial& acc) {
            if (left == 0) {
                if (!acc.is_zero()) out.push_back(acc);
                return;
            }
            for (std::size_t i = start; i < generators.size(); ++i) {
                SuperPolynomial next = acc * generators[i];
                if (next.is_zero()) continue;
                rec(i, left - 1, next);
            }
        };
    rec(0, k, SuperPolynomial::constant(ctx, Scalar(1)));
    return out;
}

namespace {

void require_even_only(const SuperPolynomial& f, std::span<const Scalar> x, int order) {
    if (f.involves_odd()) throw ContextError("taylor_truncate needs a polynomial in even generators only");
    if (x.size() != f.context()->num_even()) throw ContextError("expansion point dimension mismatch");
    if (order < 0) throw ContextError("negative truncation order");
}

SuperPolynomial shift(const SuperPolynomial& f, std::span<const Scalar> x, int sign) {
    const ContextPtr& ctx = f.context();
    std::vector<SuperPolynomial> images;
    for (std::size_t k = 0; k < ctx->num_even(); ++k)
        images.push_back(SuperPolynomial::even_generator(ctx, k) +
                         SuperPolynomial::constant(ctx, sign > 0 ? x[k] : -x[k]));
    std::vector<SuperPolynomial> odd;
    for (std::size_t k = 0; k < ctx->num_odd(); ++k) odd.push_back(SuperPolynomial::odd_generator(ctx, k));
    return substitute<SuperPolynomial>(f, images, odd, SuperPolynomial(ctx),
                                       SuperPolynomial::constant(ctx, Scalar(1)));
}

}  // namespace

SuperPolynomial taylor_coefficients(const SuperPolynomial& f, std::span<const Scalar> x, int order) {
    require_even_only(f, x, order);
    return shift(f, x, +1).truncated(order);
}

SuperPolynomial taylor_truncate(const SuperPolynomial& f, std::span<const Scalar> x, int order) {
    return shift(taylor_coefficients(f, x, order), x, -1);
}

std::vector<SuperPolynomial> maximal_ideal_at(const ContextPtr& ctx, std::span<const Scalar> x) {
    std::vector<SuperPolynomial> out;
    for (std::size_t k = 0; k < ctx->num_even(); ++k)
        out.push_back(SuperPolynomial::even_generator(ctx, k) - SuperPolynomial::constant(ctx, x[k]));
    for (std::size_t k = 0; k < ctx->num_odd(); ++k) out.push_back(SuperPolynomial::odd_generator(ctx, k));
    return out;
}

bool taylor_remainder_certified(const SuperPolynomial& f, const SuperPolynomial& p,
                                std::span<const Scalar> x, int order) {
    auto gens = maximal_ideal_at(f.context(), x);
    IdealBasis power(f.context(), ideal_power(gens, static_cast<unsigned>(order + 1)));
    return power.contains(f - p);
}

}  // namespace superkernel
