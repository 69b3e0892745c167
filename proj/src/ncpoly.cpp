#include "dgpa/ncpoly.hpp"

#include <sstream>

namespace dgpa {

long long word_degree(const GenSet& gens, const Word& w) {
    long long d = 0;
    for (auto id : w) d += gens.degree(id);
    return d;
}

std::string word_name(const GenSet& gens, const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += "*";
        s += gens.name(w[i]);
    }
    return s;
}

NCPoly NCPoly::term(Word w, Scalar c) {
    NCPoly p;
    p.add_term(std::move(w), c);
    return p;
}

std::size_t NCPoly::max_word_len() const {
    std::size_t m = 0;
    for (const auto& [w, c] : terms_) m = std::max(m, w.size());
    return m;
}

NCPoly& NCPoly::add_term(Word w, const Scalar& c) {
    if (c.is_zero()) return *this;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(std::move(w), c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
    return *this;
}

NCPoly NCPoly::operator+(const NCPoly& o) const {
    NCPoly r = *this;
    for (const auto& [w, c] : o.terms_) r.add_term(w, c);
    return r;
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

NCPoly NCPoly::operator-(const NCPoly& o) const { return *this + (-o); }

NCPoly NCPoly::operator-() const {
    NCPoly r;
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
    return r;
}

NCPoly NCPoly::scaled(const Scalar& c) const {
    NCPoly r;
    if (c.is_zero()) return r;
    for (const auto& [w, v] : terms_) {
        Scalar x = v * c;
        if (!x.is_zero()) r.terms_.emplace(w, x);
    }
    return r;
}

NCPoly NCPoly::operator*(const NCPoly& o) const {
    NCPoly r;
    for (const auto& [w1, c1] : terms_)
        for (const auto& [w2, c2] : o.terms_) {
            Word w = w1;
            w.insert(w.end(), w2.begin(), w2.end());
            r.add_term(std::move(w), c1 * c2);
        }
    return r;
}

std::optional<long long> NCPoly::homogeneous_degree(const GenSet& gens) const {
    std::optional<long long> deg;
    for (const auto& [w, c] : terms_) {
        long long d = word_degree(gens, w);
        if (!deg)
            deg = d;
        else if (*deg != d)
            return std::nullopt;
    }
    return deg;
}

std::string NCPoly::to_string(const GenSet& gens) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.to_string() << "*" << word_name(gens, w);
    }
    return os.str();
}

} // namespace dgpa
