#pragma once

#include "superkernel/scalar.hpp"

#include <cstddef>
#include <functional>
#include <map>

namespace superkernel {

/// Sparse vector keyed by an ordered column type; begin() is the leading
/// column.
template <class Key, class Compare = std::less<Key>>
using SparseVector = std::map<Key, Scalar, Compare>;

template <class Key, class Compare>
void axpy(SparseVector<Key, Compare>& y, const Scalar& a, const SparseVector<Key, Compare>& x) {
    if (a.is_zero()) return;
    for (const auto& [k, v] : x) {
        auto [it, inserted] = y.try_emplace(k, a * v);
        if (!inserted) {
            it->second += a * v;
            if (it->second.is_zero()) y.erase(it);
        }
    }
}

/// Incremental exact row echelon form.  Each stored row is monic at its
/// leading column; reduce() returns the unique remainder without entries in
/// pivot columns.
template <class Key, class Compare = std::less<Key>>
class RowEchelon {
public:
    using Vector = SparseVector<Key, Compare>;

    explicit RowEchelon(Compare cmp = Compare{}) : cmp_(cmp), rows_(cmp) {}

    Vector make_vector() const { return Vector(cmp_); }

    /// Returns true when v was independent of the rows already present.
    bool insert(Vector v) {
        v = reduce(std::move(v));
        if (v.empty()) return false;
        Scalar lead_inv = v.begin()->second.inverse();
        for (auto& [k, c] : v) c *= lead_inv;
        Key lead = v.begin()->first;
        rows_.emplace(std::move(lead), std::move(v));
        return true;
    }

    Vector reduce(Vector v) const {
        if (rows_.empty()) return v;
        auto it = v.begin();
        while (it != v.end()) {
            auto row = rows_.find(it->first);
            if (row == rows_.end()) {
                ++it;
                continue;
            }
            Key col = it->first;
            Scalar factor = -it->second;
            axpy(v, factor, row->second);
            it = v.upper_bound(col);
        }
        return v;
    }

    bool contains(const Vector& v) const { return reduce(v).empty(); }
    std::size_t rank() const noexcept { return rows_.size(); }
    bool is_pivot(const Key& k) const { return rows_.count(k) != 0; }
    const std::map<Key, Vector, Compare>& rows() const noexcept { return rows_; }

    /// Back-substitutes so every row is zero in every other pivot column.
    void fully_reduce() {
        for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
            Vector tail = it->second;
            tail.erase(tail.begin());
            tail = reduce(std::move(tail));
            Vector row(cmp_);
            row.emplace(it->first, Scalar(1));
            for (auto& [k, c] : tail) row.emplace(k, c);
            it->second = std::move(row);
        }
    }

private:
    Compare cmp_;
    std::map<Key, Vector, Compare> rows_;
};

}  // namespace superkernel
