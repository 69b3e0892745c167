#include "dgpa/element.hpp"

#include <sstream>

namespace dgpa {

Element Element::basis(const GradedSpace& space, std::uint32_t idx, Scalar coeff) {
    Element e(space);
    e.add_term(idx, coeff);
    return e;
}

Scalar Element::coeff(std::uint32_t idx, const Field& f) const {
    auto it = coeffs_.find(idx);
    return it == coeffs_.end() ? Scalar::zero(f) : it->second;
}

std::optional<long long> Element::homogeneous_degree() const {
    std::optional<long long> deg;
    for (const auto& [idx, c] : coeffs_) {
        long long d = space_.degree(idx);
        if (!deg)
            deg = d;
        else if (*deg != d)
            return std::nullopt;
    }
    return deg;
}

bool Element::is_homogeneous_of(long long d) const {
    if (coeffs_.empty()) return true;
    auto deg = homogeneous_degree();
    return deg && *deg == d;
}

Element& Element::add_term(std::uint32_t idx, const Scalar& c) {
    if (idx >= space_.dim()) throw value_error("basis index out of range");
    if (c.is_zero()) return *this;
    auto it = coeffs_.find(idx);
    if (it == coeffs_.end()) {
        coeffs_.emplace(idx, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
    return *this;
}

void Element::check_space(const Element& o) const {
    if (!space_.same_as(o.space_))
        throw value_error("elements live in different graded spaces");
}

Element Element::operator+(const Element& o) const {
    check_space(o);
    Element r = *this;
    for (const auto& [idx, c] : o.coeffs_) r.add_term(idx, c);
    return r;
}

Element& Element::operator+=(const Element& o) {
    check_space(o);
    for (const auto& [idx, c] : o.coeffs_) add_term(idx, c);
    return *this;
}

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::operator-() const {
    Element r(space_);
    for (const auto& [idx, c] : coeffs_) r.coeffs_.emplace(idx, -c);
    return r;
}

Element Element::scaled(const Scalar& c) const {
    Element r(space_);
    if (c.is_zero()) return r;
    for (const auto& [idx, v] : coeffs_) {
        Scalar w = v * c;
        if (!w.is_zero()) r.coeffs_.emplace(idx, w);
    }
    return r;
}

bool Element::operator==(const Element& o) const {
    return space_.same_as(o.space_) && coeffs_ == o.coeffs_;
}

std::string Element::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [idx, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        os << c.to_string() << "*" << space_.name(idx);
    }
    return os.str();
}

} // namespace dgpa
