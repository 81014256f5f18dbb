#pragma once

#include "superkernel/scalar.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace superkernel {

/// A term m * e_pos of the free module K[t_1..t_n]^rank.
struct ModuleTerm {
    std::vector<std::uint16_t> exps;
    std::uint32_t pos = 0;

    friend bool operator==(const ModuleTerm&, const ModuleTerm&) = default;
};

/// Position weights give each basis vector a degree; the term order is
/// weighted degree, then lex on exponents, then lower position index first.
class ModuleOrder {
public:
    ModuleOrder() = default;
    explicit ModuleOrder(std::vector<int> weights) : weights_(std::move(weights)) {}

    int weighted_degree(const ModuleTerm& t) const;
    /// <0, 0, >0 in the term order.
    int compare(const ModuleTerm& a, const ModuleTerm& b) const;
    const std::vector<int>& weights() const noexcept { return weights_; }

private:
    std::vector<int> weights_;
};

struct LeadingTermFirst {
    std::shared_ptr<const ModuleOrder> order;
    bool operator()(const ModuleTerm& a, const ModuleTerm& b) const { return order->compare(a, b) > 0; }
};

using ModuleVector = std::map<ModuleTerm, Scalar, LeadingTermFirst>;

/// Normal forms for a submodule of K[t]^rank.  Without a degree cap a
/// reduced Groebner basis is computed (Buchberger) and membership is exact;
/// with a cap the span of t^a * generator up to that weighted degree is row
/// reduced instead and every verdict is marked bounded.
class SubmoduleBasis {
public:
    SubmoduleBasis(std::size_t num_vars, std::vector<int> position_weights,
                   std::vector<ModuleVector> generators, std::optional<int> degree_cap = std::nullopt);

    struct Reduction {
        ModuleVector remainder;
        bool bounded = false;
    };

    /// Full reduction; remainder is zero iff v is a member (exactly, or up to
    /// the cap when bounded).  Throws TruncationError when v exceeds the cap.
    Reduction reduce(const ModuleVector& v) const;

    ModuleVector empty_vector() const { return ModuleVector(LeadingTermFirst{order_}); }
    const ModuleOrder& order() const noexcept { return *order_; }
    std::size_t num_vars() const noexcept { return num_vars_; }
    std::optional<int> degree_cap() const noexcept { return cap_; }
    /// The reduced Groebner basis (empty in bounded mode).
    const std::vector<ModuleVector>& basis() const noexcept { return basis_; }
    bool is_zero_module() const noexcept;

private:
    void buchberger(std::vector<ModuleVector> gens);
    void build_bounded(const std::vector<ModuleVector>& gens);

    std::size_t num_vars_;
    std::shared_ptr<const ModuleOrder> order_;
    std::optional<int> cap_;
    std::vector<ModuleVector> basis_;

    struct BoundedData;
    std::shared_ptr<const BoundedData> bounded_;
};

}  // namespace superkernel
