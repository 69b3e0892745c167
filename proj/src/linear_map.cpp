#include "dgpa/linear_map.hpp"

namespace dgpa {

GradedLinearMap::GradedLinearMap(GradedSpace source, GradedSpace target, long long degree,
                                 std::vector<Element> images)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree),
      images_(std::move(images)) {
    if (images_.size() != source_.dim())
        throw value_error("linear map table size does not match source dimension");
    for (std::uint32_t i = 0; i < images_.size(); ++i) {
        if (!images_[i].space().same_as(target_))
            throw value_error("image of '" + source_.name(i) + "' lives in the wrong space");
        if (!images_[i].is_homogeneous_of(source_.degree(i) + degree_))
            throw value_error("image of '" + source_.name(i) +
                              "' is not homogeneous of degree " +
                              std::to_string(source_.degree(i) + degree_));
    }
}

GradedLinearMap GradedLinearMap::zero(const GradedSpace& source, const GradedSpace& target,
                                      long long degree) {
    std::vector<Element> images(source.dim(), Element(target));
    return GradedLinearMap(source, target, degree, std::move(images));
}

GradedLinearMap GradedLinearMap::identity(const GradedSpace& space, const Field& f) {
    std::vector<Element> images;
    images.reserve(space.dim());
    for (std::uint32_t i = 0; i < space.dim(); ++i)
        images.push_back(Element::basis(space, i, Scalar::one(f)));
    return GradedLinearMap(space, space, 0, std::move(images));
}

Element GradedLinearMap::apply(const Element& e) const {
    if (!e.space().same_as(source_))
        throw value_error("element is not in the map's source space");
    Element out(target_);
    for (const auto& [idx, c] : e.coeffs()) out += images_.at(idx).scaled(c);
    return out;
}

bool GradedLinearMap::is_zero() const {
    for (const auto& img : images_)
        if (!img.is_zero()) return false;
    return true;
}

bool GradedLinearMap::operator==(const GradedLinearMap& o) const {
    return source_.same_as(o.source_) && target_.same_as(o.target_) &&
           degree_ == o.degree_ && images_ == o.images_;
}

GradedLinearMap GradedLinearMap::compose(const GradedLinearMap& other) const {
    if (!other.target_.same_as(source_))
        throw value_error("composition spaces do not match");
    std::vector<Element> images;
    images.reserve(other.source_.dim());
    for (std::uint32_t i = 0; i < other.source_.dim(); ++i)
        images.push_back(apply(other.image(i)));
    return GradedLinearMap(other.source_, target_, degree_ + other.degree_, std::move(images));
}

GradedLinearMap GradedLinearMap::operator+(const GradedLinearMap& o) const {
    if (!source_.same_as(o.source_) || !target_.same_as(o.target_) || degree_ != o.degree_)
        throw value_error("linear map sum shape mismatch");
    std::vector<Element> images;
    images.reserve(images_.size());
    for (std::uint32_t i = 0; i < images_.size(); ++i) images.push_back(images_[i] + o.images_[i]);
    return GradedLinearMap(source_, target_, degree_, std::move(images));
}

GradedLinearMap GradedLinearMap::operator-() const {
    std::vector<Element> images;
    images.reserve(images_.size());
    for (const auto& img : images_) images.push_back(-img);
    return GradedLinearMap(source_, target_, degree_, std::move(images));
}

GradedLinearMap GradedLinearMap::scaled(const Scalar& c) const {
    std::vector<Element> images;
    images.reserve(images_.size());
    for (const auto& img : images_) images.push_back(img.scaled(c));
    return GradedLinearMap(source_, target_, degree_, std::move(images));
}

} // namespace dgpa
