#pragma once

#include <vector>

#include "dgpa/element.hpp"

namespace dgpa {

/// Degree-q linear map between graded spaces, stored by images of source
/// basis symbols. Every image must be homogeneous of degree |x| + q or zero;
/// this is enforced at construction.
class GradedLinearMap {
public:
    GradedLinearMap() = default;
    GradedLinearMap(GradedSpace source, GradedSpace target, long long degree,
                    std::vector<Element> images);

    static GradedLinearMap zero(const GradedSpace& source, const GradedSpace& target,
                                long long degree);
    static GradedLinearMap identity(const GradedSpace& space, const Field& f);

    const GradedSpace& source() const { return source_; }
    const GradedSpace& target() const { return target_; }
    long long degree() const { return degree_; }

    const Element& image(std::uint32_t i) const { return images_.at(i); }
    Element apply(const Element& e) const;

    bool is_zero() const;
    bool operator==(const GradedLinearMap& o) const;

    /// this after other (this ∘ other).
    GradedLinearMap compose(const GradedLinearMap& other) const;
    GradedLinearMap operator+(const GradedLinearMap& o) const;
    GradedLinearMap operator-() const;
    GradedLinearMap scaled(const Scalar& c) const;

private:
    GradedSpace source_, target_;
    long long degree_ = 0;
    std::vector<Element> images_;
};

} // namespace dgpa
