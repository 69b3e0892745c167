#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "dgpa/errors.hpp"

namespace dgpa {

/// Coefficient field: the rationals, or a prime field F_p with p an odd prime.
/// Characteristic 2 is rejected at construction; several constructions divide by 2.
class Field {
public:
    static Field rationals() { return Field(0); }
    static Field prime(std::uint32_t p);

    bool is_rational() const { return p_ == 0; }
    std::uint32_t characteristic() const { return p_; }

    bool operator==(const Field& other) const { return p_ == other.p_; }
    bool operator!=(const Field& other) const { return p_ != other.p_; }

    std::string to_string() const;
    /// Parses "Q" or "Fp <p>" (also accepts "F<p>").
    static Field parse(std::string_view text);

private:
    explicit Field(std::uint32_t p) : p_(p) {}
    std::uint32_t p_; // 0 = rationals
};

/// Exact field element. Rationals are GMP-backed with arbitrary precision;
/// prime-field values are reduced representatives in [0, p).
class Scalar {
public:
    /// Rational zero; containers need a default constructor.
    Scalar() : field_(Field::rationals()), rat_(0) {}

    static Scalar zero(const Field& f) { return of_int(f, 0); }
    static Scalar one(const Field& f) { return of_int(f, 1); }
    static Scalar of_int(const Field& f, long n);
    static Scalar ratio(const Field& f, long num, long den);

    const Field& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const { return *this == one(field_); }

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const; // throws value_error on zero divisor
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    Scalar inverse() const { return one(field_) / *this; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Exact text form: "n" or "n/d" over Q, "k mod p" over F_p. Never decimal.
    std::string to_string() const;
    static Scalar parse(const Field& f, std::string_view text);

private:
    Scalar(Field f, mpq_class q) : field_(f), rat_(std::move(q)) {}
    Scalar(Field f, std::uint64_t r) : field_(f), rem_(r) {}
    void check_same_field(const Scalar& o) const;

    Field field_;
    mpq_class rat_;         // used when rational
    std::uint64_t rem_ = 0; // used when prime field
};

/// (-1)^(d1*d2) as a bare sign.
inline int koszul_sign_int(long long d1, long long d2) {
    return ((d1 & 1) && (d2 & 1)) ? -1 : 1;
}

/// (-1)^(d1*d2) in the given field.
inline Scalar koszul_sign(const Field& f, long long d1, long long d2) {
    return Scalar::of_int(f, koszul_sign_int(d1, d2));
}

/// (-1)^e for an integer exponent.
inline int parity_sign_int(long long e) { return (e & 1) ? -1 : 1; }

} // namespace dgpa
