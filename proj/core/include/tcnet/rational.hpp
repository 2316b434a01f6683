// rational.hpp -- exact rational arithmetic for timestamps and delays.
//
// All time values in the library are rationals; nothing is ever rounded.
// The representation is canonical (gcd 1, positive denominator), so equal
// values compare equal and the type is usable as an ordered map key.

#pragma once

#include <cstdint>
#include <compare>
#include <iosfwd>
#include <string>

#include "tcnet/error.hpp"

namespace tcnet {

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {} // NOLINT: implicit by design
    Rational(std::int64_t num, std::int64_t den);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_nonnegative() const { return num_ >= 0; }

    /// Integer part, rounded toward negative infinity.
    std::int64_t floor() const;
    /// Fractional part in [0, 1): *this - floor().
    Rational frac() const;

    Rational operator-() const { return Rational(-num_, den_); }
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    std::strong_ordering operator<=>(const Rational& o) const;

    /// Canonical text: "3", "-1/2". to_string("7/2") == "7/2".
    std::string str() const;

    /// Parses "p/q", decimal ("1.25", "0.1") or integer text, all exactly.
    static Rational parse(const std::string& text);

private:
    std::int64_t num_;
    std::int64_t den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational midpoint(const Rational& a, const Rational& b) {
    return (a + b) / Rational(2);
}

} // namespace tcnet
