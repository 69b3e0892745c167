#include "dgpa/bilinear_op.hpp"

namespace dgpa {

BilinearOp::BilinearOp(GradedSpace lhs, GradedSpace rhs, GradedSpace target, long long degree,
                       std::map<Key, Element> entries, bool total)
    : lhs_(std::move(lhs)), rhs_(std::move(rhs)), target_(std::move(target)),
      degree_(degree), entries_(std::move(entries)), total_(total) {
    validate();
}

BilinearOp BilinearOp::total(GradedSpace lhs, GradedSpace rhs, GradedSpace target,
                             long long degree, std::map<Key, Element> entries) {
    return BilinearOp(std::move(lhs), std::move(rhs), std::move(target), degree,
                      std::move(entries), true);
}

BilinearOp BilinearOp::partial(GradedSpace lhs, GradedSpace rhs, GradedSpace target,
                               long long degree, std::map<Key, Element> entries) {
    return BilinearOp(std::move(lhs), std::move(rhs), std::move(target), degree,
                      std::move(entries), false);
}

void BilinearOp::validate() const {
    for (const auto& [key, value] : entries_) {
        if (key.first >= lhs_.dim() || key.second >= rhs_.dim())
            throw value_error("bilinear table key out of range");
        if (!value.space().same_as(target_))
            throw value_error("bilinear table value lives in the wrong space");
        long long want = lhs_.degree(key.first) + rhs_.degree(key.second) + degree_;
        if (!value.is_homogeneous_of(want))
            throw value_error("table entry (" + lhs_.name(key.first) + ", " +
                              rhs_.name(key.second) + ") is not homogeneous of degree " +
                              std::to_string(want));
    }
}

bool BilinearOp::defined(std::uint32_t i, std::uint32_t j) const {
    return total_ || entries_.count({i, j}) > 0;
}

Element BilinearOp::entry(std::uint32_t i, std::uint32_t j) const {
    auto it = entries_.find({i, j});
    if (it != entries_.end()) return it->second;
    if (total_) return Element(target_);
    throw truncation_overflow_error("table entry (" + lhs_.name(i) + ", " + rhs_.name(j) +
                                    ") is outside the truncation window");
}

Element BilinearOp::apply(const Element& a, const Element& b) const {
    if (!a.space().same_as(lhs_) || !b.space().same_as(rhs_))
        throw incomplete_table_error("operands do not match the operation's spaces");
    Element out(target_);
    for (const auto& [i, ca] : a.coeffs())
        for (const auto& [j, cb] : b.coeffs())
            out += entry(i, j).scaled(ca * cb);
    return out;
}

BilinearOp BilinearOp::negated() const {
    std::map<Key, Element> entries;
    for (const auto& [key, value] : entries_) entries.emplace(key, -value);
    return BilinearOp(lhs_, rhs_, target_, degree_, std::move(entries), total_);
}

std::size_t BilinearOp::undefined_count() const {
    if (total_) return 0;
    return lhs_.dim() * rhs_.dim() - entries_.size();
}

bool BilinearOp::operator==(const BilinearOp& o) const {
    if (!lhs_.same_as(o.lhs_) || !rhs_.same_as(o.rhs_) || !target_.same_as(o.target_) ||
        degree_ != o.degree_ || total_ != o.total_)
        return false;
    // Compare sparsely: every stored entry must match, zeros may be omitted.
    auto covered = [](const BilinearOp& x, const BilinearOp& y) {
        for (const auto& [key, value] : x.entries_) {
            auto it = y.entries_.find(key);
            if (it == y.entries_.end()) {
                if (!y.total_ || !value.is_zero()) return false;
            } else if (!(it->second == value)) {
                return false;
            }
        }
        return true;
    };
    return covered(*this, o) && covered(o, *this);
}

} // namespace dgpa
