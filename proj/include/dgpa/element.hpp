#pragma once

#include <map>
#include <optional>
#include <string>

#include "dgpa/field.hpp"
#include "dgpa/graded_space.hpp"

namespace dgpa {

/// Finitely supported map basis-symbol -> scalar inside one graded space.
/// Zero coefficients are never stored; the empty support is the canonical zero.
class Element {
public:
    Element() = default;
    explicit Element(GradedSpace space) : space_(std::move(space)) {}

    static Element basis(const GradedSpace& space, std::uint32_t idx, Scalar coeff);
    static Element zero(const GradedSpace& space) { return Element(space); }

    const GradedSpace& space() const { return space_; }
    const std::map<std::uint32_t, Scalar>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    Scalar coeff(std::uint32_t idx, const Field& f) const;

    /// All supported symbols share one degree; nullopt for zero or mixed.
    std::optional<long long> homogeneous_degree() const;
    bool is_homogeneous_of(long long d) const; // zero counts as any degree

    Element& add_term(std::uint32_t idx, const Scalar& c);
    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator-() const;
    Element scaled(const Scalar& c) const;
    Element& operator+=(const Element& o);

    bool operator==(const Element& o) const;
    bool operator!=(const Element& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    void check_space(const Element& o) const;
    GradedSpace space_;
    std::map<std::uint32_t, Scalar> coeffs_;
};

} // namespace dgpa
