#include "tcnet/rational.hpp"

#include <numeric>
#include <ostream>

namespace tcnet {

namespace {

using Wide = __int128;

std::int64_t narrow(Wide v, const char* ctx) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw Error(std::string("rational overflow in ") + ctx);
    return static_cast<std::int64_t>(v);
}

// Reduces n/d (d > 0) in 128-bit space before narrowing.
Rational reduced(Wide n, Wide d, const char* ctx) {
    if (n == 0) return Rational(0);
    Wide a = n < 0 ? -n : n, b = d;
    while (b != 0) { Wide t = a % b; a = b; b = t; }
    return Rational(narrow(n / a, ctx), narrow(d / a, ctx));
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    const std::int64_t g = std::gcd(num, den);
    num_ = g == 0 ? 0 : num / g;
    den_ = g == 0 ? 1 : den / g;
}

std::int64_t Rational::floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

Rational Rational::frac() const {
    return *this - Rational(floor());
}

Rational Rational::operator+(const Rational& o) const {
    return reduced(Wide(num_) * o.den_ + Wide(o.num_) * den_,
                   Wide(den_) * o.den_, "+");
}

Rational Rational::operator-(const Rational& o) const {
    return *this + Rational(-o.num_, o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    return reduced(Wide(num_) * o.num_, Wide(den_) * o.den_, "*");
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw Error("rational division by zero");
    return *this * Rational(o.den_, o.num_);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    const Wide lhs = Wide(num_) * o.den_;
    const Wide rhs = Wide(o.num_) * den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    const auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            std::size_t p1 = 0, p2 = 0;
            const std::int64_t n = std::stoll(text.substr(0, slash), &p1);
            const std::int64_t d = std::stoll(text.substr(slash + 1), &p2);
            if (p1 != slash || p2 != text.size() - slash - 1)
                throw ParseError("bad rational literal: " + text);
            return Rational(n, d);
        }
        const auto dot = text.find('.');
        if (dot == std::string::npos) {
            std::size_t p = 0;
            const std::int64_t n = std::stoll(text, &p);
            if (p != text.size()) throw ParseError("bad rational literal: " + text);
            return Rational(n);
        }
        const std::string ip = text.substr(0, dot);
        const std::string fp = text.substr(dot + 1);
        if (fp.empty() || fp.size() > 17)
            throw ParseError("bad decimal literal: " + text);
        for (char c : fp)
            if (c < '0' || c > '9') throw ParseError("bad decimal literal: " + text);
        std::size_t p = 0;
        std::int64_t whole = ip.empty() || ip == "-" ? 0 : std::stoll(ip, &p);
        if (!ip.empty() && ip != "-" && p != ip.size())
            throw ParseError("bad decimal literal: " + text);
        std::int64_t den = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
        const std::int64_t fnum = fp.empty() ? 0 : std::stoll(fp);
        const bool neg = !ip.empty() && ip[0] == '-';
        Rational mag = Rational(neg ? -whole : whole) + Rational(fnum, den);
        return neg ? -mag : mag;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational literal: " + text);
    } catch (const std::out_of_range&) {
        throw ParseError("rational literal out of range: " + text);
    }
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

} // namespace tcnet
