#pragma once

#include <map>
#include <optional>
#include <utility>

#include "dgpa/element.hpp"

namespace dgpa {

/// Degree-q bilinear operation lhs x rhs -> target given by a structure-constant
/// table on basis pairs. Tables come in two flavours:
///   - total: omitted entries mean zero (presentation-file convention);
///   - partial: omitted entries are undefined, and reading one throws.
/// Partial tables arise from finite truncations, where an entry whose true
/// value leaves the window is an overflow, never a silent zero.
class BilinearOp {
public:
    using Key = std::pair<std::uint32_t, std::uint32_t>;

    BilinearOp() = default;

    static BilinearOp total(GradedSpace lhs, GradedSpace rhs, GradedSpace target,
                            long long degree, std::map<Key, Element> entries);
    static BilinearOp partial(GradedSpace lhs, GradedSpace rhs, GradedSpace target,
                              long long degree, std::map<Key, Element> entries);

    const GradedSpace& lhs() const { return lhs_; }
    const GradedSpace& rhs() const { return rhs_; }
    const GradedSpace& target() const { return target_; }
    long long degree() const { return degree_; }
    bool is_total() const { return total_; }

    bool defined(std::uint32_t i, std::uint32_t j) const;
    /// Throws truncation_overflow_error on an undefined partial entry.
    Element entry(std::uint32_t i, std::uint32_t j) const;

    /// Bilinear extension of the table. Throws on any undefined entry met.
    Element apply(const Element& a, const Element& b) const;

    const std::map<Key, Element>& entries() const { return entries_; }

    BilinearOp negated() const;
    /// Number of table cells that are undefined (0 for total tables).
    std::size_t undefined_count() const;

    bool operator==(const BilinearOp& o) const;

private:
    BilinearOp(GradedSpace lhs, GradedSpace rhs, GradedSpace target, long long degree,
               std::map<Key, Element> entries, bool total);
    void validate() const;

    GradedSpace lhs_, rhs_, target_;
    long long degree_ = 0;
    std::map<Key, Element> entries_;
    bool total_ = true;
};

} // namespace dgpa
