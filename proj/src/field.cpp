#include "dgpa/field.hpp"

#include <cctype>
#include <charconv>

namespace dgpa {

namespace {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mod_mul(r, a, p);
        a = mod_mul(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t mod_of_long(long n, std::uint64_t p) {
    long long m = static_cast<long long>(n) % static_cast<long long>(p);
    if (m < 0) m += static_cast<long long>(p);
    return static_cast<std::uint64_t>(m);
}

} // namespace

Field Field::prime(std::uint32_t p) {
    if (p == 2)
        throw value_error("characteristic 2 is not supported (several relations divide by 2)");
    if (!is_prime(p))
        throw value_error("field characteristic must be prime, got " + std::to_string(p));
    return Field(p);
}

std::string Field::to_string() const {
    if (is_rational()) return "Q";
    return "Fp " + std::to_string(p_);
}

Field Field::parse(std::string_view text) {
    // Trim whitespace on both ends.
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text == "Q") return rationals();
    std::string_view num = text;
    if (num.substr(0, 2) == "Fp")
        num.remove_prefix(2);
    else if (num.substr(0, 1) == "F")
        num.remove_prefix(1);
    else
        throw value_error("bad field spec '" + std::string(text) + "' (expected \"Q\" or \"Fp p\")");
    while (!num.empty() && std::isspace(static_cast<unsigned char>(num.front()))) num.remove_prefix(1);
    std::uint32_t p = 0;
    auto res = std::from_chars(num.data(), num.data() + num.size(), p);
    if (res.ec != std::errc() || res.ptr != num.data() + num.size())
        throw value_error("bad field spec '" + std::string(text) + "'");
    return prime(p);
}

Scalar Scalar::of_int(const Field& f, long n) {
    if (f.is_rational()) return Scalar(f, mpq_class(n));
    return Scalar(f, mod_of_long(n, f.characteristic()));
}

Scalar Scalar::ratio(const Field& f, long num, long den) {
    if (den == 0) throw value_error("division by zero");
    if (f.is_rational()) {
        mpq_class q(num, den);
        q.canonicalize();
        return Scalar(f, q);
    }
    return of_int(f, num) / of_int(f, den);
}

bool Scalar::is_zero() const {
    if (field_.is_rational()) return rat_ == 0;
    return rem_ == 0;
}

void Scalar::check_same_field(const Scalar& o) const {
    if (field_ != o.field_)
        throw field_mismatch_error("scalars from different fields: " + field_.to_string() +
                                   " vs " + o.field_.to_string());
}

Scalar Scalar::operator-() const {
    if (field_.is_rational()) return Scalar(field_, mpq_class(-rat_));
    return Scalar(field_, rem_ == 0 ? 0 : field_.characteristic() - rem_);
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same_field(o);
    if (field_.is_rational()) return Scalar(field_, mpq_class(rat_ + o.rat_));
    std::uint64_t s = rem_ + o.rem_;
    if (s >= field_.characteristic()) s -= field_.characteristic();
    return Scalar(field_, s);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    check_same_field(o);
    if (field_.is_rational()) return Scalar(field_, mpq_class(rat_ * o.rat_));
    return Scalar(field_, mod_mul(rem_, o.rem_, field_.characteristic()));
}

Scalar Scalar::operator/(const Scalar& o) const {
    check_same_field(o);
    if (o.is_zero()) throw value_error("division by zero");
    if (field_.is_rational()) return Scalar(field_, mpq_class(rat_ / o.rat_));
    // Fermat inverse; p is prime.
    std::uint64_t inv = mod_pow(o.rem_, field_.characteristic() - 2, field_.characteristic());
    return Scalar(field_, mod_mul(rem_, inv, field_.characteristic()));
}

bool Scalar::operator==(const Scalar& o) const {
    if (field_ != o.field_) return false;
    if (field_.is_rational()) return rat_ == o.rat_;
    return rem_ == o.rem_;
}

std::string Scalar::to_string() const {
    if (field_.is_rational()) return rat_.get_str();
    return std::to_string(rem_) + " mod " + std::to_string(field_.characteristic());
}

Scalar Scalar::parse(const Field& f, std::string_view text) {
    std::string s(text);
    // strip spaces
    std::string compact;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
    if (compact.empty()) throw value_error("empty scalar");
    if (f.is_rational()) {
        try {
            mpq_class q(compact, 10);
            q.canonicalize();
            if (q.get_den() == 0) throw value_error("zero denominator in '" + s + "'");
            return Scalar(f, q);
        } catch (const std::invalid_argument&) {
            throw value_error("bad rational '" + s + "'");
        }
    }
    // "k mod p" with the "mod p" part optional; also accept n/d.
    auto mod_pos = compact.find("mod");
    if (mod_pos != std::string::npos) {
        std::string ptext = compact.substr(mod_pos + 3);
        if (ptext != std::to_string(f.characteristic()))
            throw value_error("scalar '" + s + "' names a different characteristic");
        compact = compact.substr(0, mod_pos);
    }
    auto slash = compact.find('/');
    std::string num = slash == std::string::npos ? compact : compact.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : compact.substr(slash + 1);
    auto parse_int = [&](const std::string& t) -> long {
        long v = 0;
        auto r = std::from_chars(t.data(), t.data() + t.size(), v);
        if (r.ec != std::errc() || r.ptr != t.data() + t.size())
            throw value_error("bad scalar '" + s + "'");
        return v;
    };
    return ratio(f, parse_int(num), parse_int(den));
}

} // namespace dgpa
