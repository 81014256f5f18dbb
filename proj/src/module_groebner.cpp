#include "superkernel/module_groebner.hpp"

#include "superkernel/errors.hpp"
#include "superkernel/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace superkernel {

int ModuleOrder::weighted_degree(const ModuleTerm& t) const {
    int d = std::accumulate(t.exps.begin(), t.exps.end(), 0);
    return d + (t.pos < weights_.size() ? weights_[t.pos] : 0);
}

int ModuleOrder::compare(const ModuleTerm& a, const ModuleTerm& b) const {
    int da = weighted_degree(a), db = weighted_degree(b);
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t k = 0; k < a.exps.size(); ++k)
        if (a.exps[k] != b.exps[k]) return a.exps[k] < b.exps[k] ? -1 : 1;
    if (a.pos != b.pos) return a.pos > b.pos ? -1 : 1;
    return 0;
}

namespace {

bool divides(const ModuleTerm& a, const ModuleTerm& b) {
    if (a.pos != b.pos) return false;
    for (std::size_t k = 0; k < a.exps.size(); ++k)
        if (a.exps[k] > b.exps[k]) return false;
    return true;
}

std::vector<std::uint16_t> quotient(const ModuleTerm& num, const ModuleTerm& den) {
    std::vector<std::uint16_t> q(num.exps.size());
    for (std::size_t k = 0; k < q.size(); ++k) q[k] = static_cast<std::uint16_t>(num.exps[k] - den.exps[k]);
    return q;
}

ModuleTerm lcm(const ModuleTerm& a, const ModuleTerm& b) {
    ModuleTerm l{a.exps, a.pos};
    for (std::size_t k = 0; k < l.exps.size(); ++k) l.exps[k] = std::max(a.exps[k], b.exps[k]);
    return l;
}

/// y += c * t^shift * x
void add_shifted(ModuleVector& y, const Scalar& c, const std::vector<std::uint16_t>& shift,
                 const ModuleVector& x) {
    ModuleTerm t;
    for (const auto& [term, v] : x) {
        t.exps = term.exps;
        for (std::size_t k = 0; k < shift.size(); ++k) t.exps[k] += shift[k];
        t.pos = term.pos;
        Scalar add = c * v;
        auto [it, inserted] = y.try_emplace(t, add);
        if (!inserted) {
            it->second += add;
            if (it->second.is_zero()) y.erase(it);
        }
    }
}

void make_monic(ModuleVector& v) {
    if (v.empty()) return;
    Scalar inv = v.begin()->second.inverse();
    for (auto& [t, c] : v) c *= inv;
}

/// Reduces every term of v that is divisible by a leading term of g.
ModuleVector full_reduce(ModuleVector v, const std::vector<ModuleVector>& g, std::size_t skip = SIZE_MAX) {
    auto it = v.begin();
    while (it != v.end()) {
        const ModuleTerm& term = it->first;
        std::size_t hit = SIZE_MAX;
        for (std::size_t k = 0; k < g.size(); ++k) {
            if (k == skip || g[k].empty()) continue;
            if (divides(g[k].begin()->first, term)) {
                hit = k;
                break;
            }
        }
        if (hit == SIZE_MAX) {
            ++it;
            continue;
        }
        ModuleTerm key = term;
        const auto& lead = *g[hit].begin();
        Scalar factor = -(it->second / lead.second);
        add_shifted(v, factor, quotient(key, lead.first), g[hit]);
        it = v.upper_bound(key);
    }
    return v;
}

}  // namespace

struct SubmoduleBasis::BoundedData {
    RowEchelon<ModuleTerm, LeadingTermFirst> echelon;
    int cap;
};

SubmoduleBasis::SubmoduleBasis(std::size_t num_vars, std::vector<int> position_weights,
                               std::vector<ModuleVector> generators, std::optional<int> degree_cap)
    : num_vars_(num_vars),
      order_(std::make_shared<const ModuleOrder>(std::move(position_weights))),
      cap_(degree_cap) {
    // re-key the generators under this basis' own order object
    std::vector<ModuleVector> gens;
    gens.reserve(generators.size());
    for (auto& g : generators) {
        ModuleVector v = empty_vector();
        for (auto& [t, c] : g) {
            if (t.exps.size() != num_vars_) throw ContextError("module term arity mismatch");
            if (!c.is_zero()) v.emplace(t, c);
        }
        if (!v.empty()) gens.push_back(std::move(v));
    }
    if (cap_)
        build_bounded(gens);
    else
        buchberger(std::move(gens));
}

bool SubmoduleBasis::is_zero_module() const noexcept {
    if (bounded_) return bounded_->echelon.rank() == 0;
    return basis_.empty();
}

void SubmoduleBasis::buchberger(std::vector<ModuleVector> gens) {
    std::vector<ModuleVector> g;
    for (auto& v : gens) {
        v = full_reduce(std::move(v), g);
        if (v.empty()) continue;
        make_monic(v);
        g.push_back(std::move(v));
    }
    struct Pair {
        std::size_t i, j;
        ModuleTerm lcm;
        int degree;
    };
    std::vector<Pair> pairs;
    auto add_pairs = [&](std::size_t j) {
        const ModuleTerm& lj = g[j].begin()->first;
        for (std::size_t i = 0; i < j; ++i) {
            if (g[i].empty()) continue;
            const ModuleTerm& li = g[i].begin()->first;
            if (li.pos != lj.pos) continue;
            ModuleTerm l = lcm(li, lj);
            pairs.push_back({i, j, l, order_->weighted_degree(l)});
        }
    };
    for (std::size_t j = 0; j < g.size(); ++j) add_pairs(j);

    while (!pairs.empty()) {
        auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
            if (a.degree != b.degree) return a.degree < b.degree;
            return order_->compare(a.lcm, b.lcm) < 0;
        });
        Pair p = *best;
        pairs.erase(best);
        if (g[p.i].empty() || g[p.j].empty()) continue;
        const ModuleTerm& li = g[p.i].begin()->first;
        const ModuleTerm& lj = g[p.j].begin()->first;
        ModuleVector s = empty_vector();
        add_shifted(s, Scalar(1), quotient(p.lcm, li), g[p.i]);
        add_shifted(s, Scalar(-1), quotient(p.lcm, lj), g[p.j]);
        s = full_reduce(std::move(s), g);
        if (s.empty()) continue;
        make_monic(s);
        g.push_back(std::move(s));
        add_pairs(g.size() - 1);
    }

    // minimal basis, then interreduce
    std::vector<ModuleVector> minimal;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (g[k].empty()) continue;
        const ModuleTerm& lk = g[k].begin()->first;
        bool redundant = false;
        for (std::size_t m = 0; m < g.size() && !redundant; ++m) {
            if (m == k || g[m].empty()) continue;
            const ModuleTerm& lm = g[m].begin()->first;
            if (divides(lm, lk) && (!(lm == lk) || m < k)) redundant = true;
        }
        if (!redundant) minimal.push_back(g[k]);
    }
    for (std::size_t k = 0; k < minimal.size(); ++k) {
        minimal[k] = full_reduce(std::move(minimal[k]), minimal, k);
        make_monic(minimal[k]);
    }
    std::sort(minimal.begin(), minimal.end(), [&](const ModuleVector& a, const ModuleVector& b) {
        return order_->compare(a.begin()->first, b.begin()->first) < 0;
    });
    basis_ = std::move(minimal);
}

void SubmoduleBasis::build_bounded(const std::vector<ModuleVector>& gens) {
    auto data = std::make_shared<BoundedData>(BoundedData{
        RowEchelon<ModuleTerm, LeadingTermFirst>(LeadingTermFirst{order_}), *cap_});
    std::vector<std::uint16_t> alpha(num_vars_, 0);
    for (const auto& gen : gens) {
        int top = 0;
        for (const auto& [t, c] : gen) top = std::max(top, order_->weighted_degree(t));
        int budget = *cap_ - top;
        if (budget < 0) continue;
        // enumerate all exponent vectors with |alpha| <= budget
        std::fill(alpha.begin(), alpha.end(), 0);
        while (true) {
            ModuleVector v = empty_vector();
            add_shifted(v, Scalar(1), alpha, gen);
            SparseVector<ModuleTerm, LeadingTermFirst> row(LeadingTermFirst{order_});
            for (auto& [t, c] : v) row.emplace(t, c);
            data->echelon.insert(std::move(row));
            // next alpha
            std::size_t k = 0;
            int sum = std::accumulate(alpha.begin(), alpha.end(), 0);
            while (k < alpha.size()) {
                if (sum < budget) {
                    ++alpha[k];
                    break;
                }
                sum -= alpha[k];
                alpha[k] = 0;
                ++k;
            }
            if (k == alpha.size() || num_vars_ == 0) break;
        }
    }
    bounded_ = std::move(data);
}

SubmoduleBasis::Reduction SubmoduleBasis::reduce(const ModuleVector& v) const {
    ModuleVector in = empty_vector();
    for (const auto& [t, c] : v) in.emplace(t, c);
    if (bounded_) {
        for (const auto& [t, c] : in)
            if (order_->weighted_degree(t) > bounded_->cap)
                throw TruncationError("input exceeds the degree cap " + std::to_string(bounded_->cap));
        SparseVector<ModuleTerm, LeadingTermFirst> row(LeadingTermFirst{order_});
        for (auto& [t, c] : in) row.emplace(t, c);
        auto rem = bounded_->echelon.reduce(std::move(row));
        ModuleVector out = empty_vector();
        for (auto& [t, c] : rem) out.emplace(t, c);
        return {std::move(out), true};
    }
    return {full_reduce(std::move(in), basis_), false};
}

}  // namespace superkernel
