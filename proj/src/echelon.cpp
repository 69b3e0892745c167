#include "dgpa/echelon.hpp"

namespace dgpa {

SparseVec sparse_scaled(const SparseVec& a, const Scalar& c) {
    SparseVec r;
    if (c.is_zero()) return r;
    for (const auto& [col, v] : a) {
        Scalar w = v * c;
        if (!w.is_zero()) r.emplace(col, w);
    }
    return r;
}

void sparse_axpy(SparseVec& a, const Scalar& c, const SparseVec& b) {
    if (c.is_zero()) return;
    for (const auto& [col, v] : b) {
        Scalar w = v * c;
        if (w.is_zero()) continue;
        auto it = a.find(col);
        if (it == a.end()) {
            a.emplace(col, w);
        } else {
            it->second += w;
            if (it->second.is_zero()) a.erase(it);
        }
    }
}

std::uint32_t RowReducer::leading(const SparseVec& v) const {
    return pivot_largest_ ? v.rbegin()->first : v.begin()->first;
}

SparseVec RowReducer::reduce(SparseVec row, SparseVec* tag_acc) const {
    // Stored rows are inter-reduced, so eliminating a pivot column only
    // introduces non-pivot columns; each pivot is eliminated at most once.
    bool progress = true;
    while (progress && !row.empty()) {
        progress = false;
        for (auto it = row.begin(); it != row.end(); ++it) {
            auto pivot_it = rows_.find(it->first);
            if (pivot_it == rows_.end()) continue;
            Scalar c = it->second; // pivot rows are monic
            sparse_axpy(row, -c, pivot_it->second.vec);
            if (tag_acc) sparse_axpy(*tag_acc, c, pivot_it->second.tag);
            progress = true;
            break;
        }
    }
    return row;
}

std::optional<std::uint32_t> RowReducer::add_row(SparseVec row, SparseVec tag,
                                                 SparseVec* vanished_tag) {
    SparseVec used;
    row = reduce(std::move(row), &used);
    // tag of the residual: original tag minus the used combinations
    sparse_axpy(tag, Scalar::of_int(field_, -1), used);
    if (row.empty()) {
        if (vanished_tag) *vanished_tag = std::move(tag);
        return std::nullopt;
    }
    std::uint32_t piv = leading(row);
    Scalar lead = row.at(piv);
    Scalar inv = Scalar::one(field_) / lead;
    row = sparse_scaled(row, inv);
    tag = sparse_scaled(tag, inv);
    // Back-eliminate the new pivot from all stored rows to keep them inter-reduced.
    for (auto& [col, stored] : rows_) {
        auto hit = stored.vec.find(piv);
        if (hit == stored.vec.end()) continue;
        Scalar c = hit->second;
        sparse_axpy(stored.vec, -c, row);
        sparse_axpy(stored.tag, -c, tag);
    }
    rows_.emplace(piv, Row{std::move(row), std::move(tag)});
    return piv;
}

} // namespace dgpa
