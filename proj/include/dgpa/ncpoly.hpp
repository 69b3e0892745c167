#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgpa/field.hpp"
#include "dgpa/graded_space.hpp"

namespace dgpa {

/// Generator alphabet of the enveloping algebra: one M and one H letter per
/// basis symbol of the base algebra. Ids: M letters first (id = basis index),
/// then H letters (id = dim + basis index). |M_x| = |x|, |H_x| = |x| + p.
class GenSet {
public:
    GenSet() = default;
    GenSet(GradedSpace base, long long p) : base_(std::move(base)), p_(p) {}

    const GradedSpace& base() const { return base_; }
    long long bracket_degree() const { return p_; }
    std::uint32_t count() const { return 2 * static_cast<std::uint32_t>(base_.dim()); }

    std::uint32_t m_id(std::uint32_t b) const { return b; }
    std::uint32_t h_id(std::uint32_t b) const {
        return static_cast<std::uint32_t>(base_.dim()) + b;
    }
    bool is_m(std::uint32_t id) const { return id < base_.dim(); }
    std::uint32_t base_of(std::uint32_t id) const {
        return is_m(id) ? id : id - static_cast<std::uint32_t>(base_.dim());
    }
    long long degree(std::uint32_t id) const {
        return base_.degree(base_of(id)) + (is_m(id) ? 0 : p_);
    }
    std::string name(std::uint32_t id) const {
        return (is_m(id) ? "M_" : "H_") + base_.name(base_of(id));
    }

private:
    GradedSpace base_;
    long long p_ = 0;
};

/// A word in generator ids; the empty word is the unit.
using Word = std::vector<std::uint32_t>;

/// Shortlex: length first, then lexicographic on ids.
struct ShortLex {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

long long word_degree(const GenSet& gens, const Word& w);
std::string word_name(const GenSet& gens, const Word& w);

/// Noncommutative polynomial: finitely supported Word -> Scalar, no stored
/// zeros, terms ordered shortlex.
class NCPoly {
public:
    using Terms = std::map<Word, Scalar, ShortLex>;

    NCPoly() = default;
    static NCPoly term(Word w, Scalar c);
    static NCPoly unit(const Field& f) { return term({}, Scalar::one(f)); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t max_word_len() const;

    NCPoly& add_term(Word w, const Scalar& c);
    NCPoly operator+(const NCPoly& o) const;
    NCPoly operator-(const NCPoly& o) const;
    NCPoly operator-() const;
    NCPoly& operator+=(const NCPoly& o);
    NCPoly scaled(const Scalar& c) const;
    NCPoly operator*(const NCPoly& o) const; // concatenation product

    bool operator==(const NCPoly& o) const { return terms_ == o.terms_; }

    std::optional<long long> homogeneous_degree(const GenSet& gens) const;
    std::string to_string(const GenSet& gens) const;

private:
    Terms terms_;
};

} // namespace dgpa
