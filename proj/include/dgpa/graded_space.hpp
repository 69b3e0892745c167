#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dgpa/errors.hpp"

namespace dgpa {

struct BasisSymbol {
    std::string name;
    long long degree = 0;
    bool operator==(const BasisSymbol& o) const { return name == o.name && degree == o.degree; }
};

/// Finite graded vector space with a named, totally ordered basis.
/// Declaration order is the total order; all downstream tie-breaking
/// (rewriting, echelon pivots, representative choice) uses it.
/// Immutable and cheaply copyable.
class GradedSpace {
public:
    GradedSpace() : data_(std::make_shared<const Data>()) {}
    explicit GradedSpace(std::vector<BasisSymbol> symbols);

    std::size_t dim() const { return data_->symbols.size(); }
    const BasisSymbol& symbol(std::uint32_t i) const { return data_->symbols.at(i); }
    const std::string& name(std::uint32_t i) const { return symbol(i).name; }
    long long degree(std::uint32_t i) const { return symbol(i).degree; }
    const std::vector<BasisSymbol>& symbols() const { return data_->symbols; }

    std::optional<std::uint32_t> find(std::string_view name) const;
    /// Like find() but throws with a clear message.
    std::uint32_t index_of(std::string_view name) const;

    /// Structural equality (same names and degrees in the same order).
    bool same_as(const GradedSpace& o) const {
        return data_ == o.data_ || data_->symbols == o.data_->symbols;
    }

private:
    struct Data {
        std::vector<BasisSymbol> symbols;
        std::map<std::string, std::uint32_t, std::less<>> index;
    };
    std::shared_ptr<const Data> data_;
};

/// Basis = ordered pairs (v, w) in lexicographic factor order, degree additive.
/// Pair (i, j) maps to flat index i * dim(W) + j.
GradedSpace tensor_space(const GradedSpace& v, const GradedSpace& w);

inline std::uint32_t tensor_index(const GradedSpace& /*v*/, const GradedSpace& w,
                                  std::uint32_t i, std::uint32_t j) {
    return i * static_cast<std::uint32_t>(w.dim()) + j;
}

inline std::pair<std::uint32_t, std::uint32_t>
tensor_split(const GradedSpace& w, std::uint32_t flat) {
    const auto d = static_cast<std::uint32_t>(w.dim());
    return {flat / d, flat % d};
}

} // namespace dgpa
