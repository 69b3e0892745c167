#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "dgpa/field.hpp"

namespace dgpa {

/// Sparse vector over an ordered column index set; absent columns are zero.
using SparseVec = std::map<std::uint32_t, Scalar>;

SparseVec sparse_scaled(const SparseVec& a, const Scalar& c);
void sparse_axpy(SparseVec& a, const Scalar& c, const SparseVec& b); // a += c*b

/// Incremental reduced echelon form over an exact field.
///
/// Pivot choice is deterministic: the smallest column of a row by default,
/// the largest when `pivot_largest` is set (used where large words should
/// rewrite to combinations of smaller ones). Stored rows are kept fully
/// inter-reduced and monic.
///
/// Each row may carry a tag vector that follows the same row operations;
/// tags express stored rows as combinations of the original inputs, which
/// gives kernel vectors and quotient coordinates for free.
class RowReducer {
public:
    explicit RowReducer(Field field, bool pivot_largest = false)
        : field_(std::move(field)), pivot_largest_(pivot_largest) {}

    struct Row {
        SparseVec vec;
        SparseVec tag;
    };

    /// Reduces `row` against the stored pivots and stores it if independent.
    /// Returns the pivot column on success, nullopt if the row vanished.
    /// On vanish, `vanished_tag` (if non-null) receives the final tag.
    std::optional<std::uint32_t> add_row(SparseVec row, SparseVec tag = {},
                                         SparseVec* vanished_tag = nullptr);

    /// Residual of `row` after full reduction. If `tag_acc` is non-null it
    /// accumulates the tag combination of the pivot rows that were used.
    SparseVec reduce(SparseVec row, SparseVec* tag_acc = nullptr) const;

    std::size_t rank() const { return rows_.size(); }
    const std::map<std::uint32_t, Row>& rows() const { return rows_; }
    bool has_pivot(std::uint32_t col) const { return rows_.count(col) > 0; }
    const Field& field() const { return field_; }

private:
    std::uint32_t leading(const SparseVec& v) const;

    Field field_;
    bool pivot_largest_;
    std::map<std::uint32_t, Row> rows_;
};

} // namespace dgpa
