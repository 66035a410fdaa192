#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "sumprod/errors.hpp"

namespace sumprod {

// Arbitrary-precision fraction in canonical form: denominator > 0,
// gcd(|num|, den) = 1. Equality, hashing and ordering all agree with the
// mathematical value.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit by design, integers embed
    Rational(long n, long d) {
        if (d == 0) throw DomainError("Rational: division by zero");
        v_ = mpq_class(n, d);
        v_.canonicalize();
    }
    Rational(const mpz_class& n, const mpz_class& d) {
        if (d == 0) throw DomainError("Rational: division by zero");
        v_ = mpq_class(n, d);
        v_.canonicalize();
    }
    explicit Rational(const mpz_class& n) : v_(n) {}
    explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

    // Accepts an optionally signed decimal integer or "p/q" (q != 0).
    static Rational parse(std::string_view text) {
        std::string_view s = trim(text);
        if (s.empty()) throw ParseError("Rational: empty input");
        auto slash = s.find('/');
        if (slash == std::string_view::npos) {
            return Rational(parse_integer(s, text));
        }
        mpz_class num = parse_integer(s.substr(0, slash), text);
        mpz_class den = parse_integer(s.substr(slash + 1), text);
        if (den == 0)
            throw DomainError("Rational: division by zero in \"" + std::string(text) + "\"");
        return Rational(num, den);
    }

    // "p/q", or just "p" for integers; parse(str()) is the identity.
    std::string str() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    const mpz_class& numerator() const { return v_.get_num(); }
    const mpz_class& denominator() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    bool is_positive() const { return sgn(v_) > 0; }
    int sign() const { return sgn(v_); }

    double to_double() const { return v_.get_d(); }

    Rational inverse() const {
        if (is_zero()) throw DomainError("Rational: inverse of zero");
        return Rational(v_.get_den(), v_.get_num());
    }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
    Rational operator/(const Rational& o) const {
        if (o.is_zero()) throw DomainError("Rational: division by zero");
        return Rational(mpq_class(v_ / o.v_));
    }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

    bool operator==(const Rational& o) const { return mpq_cmp(v_.get_mpq_t(), o.v_.get_mpq_t()) == 0; }
    std::strong_ordering operator<=>(const Rational& o) const {
        int c = mpq_cmp(v_.get_mpq_t(), o.v_.get_mpq_t());
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::size_t hash() const {
        std::size_t h = hash_mpz(v_.get_num());
        return h * 0x9e3779b97f4a7c15ULL ^ hash_mpz(v_.get_den());
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    static std::string_view trim(std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
        return s;
    }

    static mpz_class parse_integer(std::string_view s, std::string_view whole) {
        if (s.empty()) throw ParseError("Rational: malformed \"" + std::string(whole) + "\"");
        std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
        if (i == s.size()) throw ParseError("Rational: malformed \"" + std::string(whole) + "\"");
        for (std::size_t k = i; k < s.size(); ++k)
            if (s[k] < '0' || s[k] > '9')
                throw ParseError("Rational: malformed \"" + std::string(whole) + "\"");
        std::string digits(s[0] == '+' ? s.substr(1) : s);  // mpz rejects a leading '+'
        return mpz_class(digits, 10);
    }

    static std::size_t hash_mpz(const mpz_class& z) {
        const mpz_srcptr p = z.get_mpz_t();
        std::size_t h = static_cast<std::size_t>(mpz_sgn(p)) + 0x12345;
        int n = static_cast<int>(mpz_size(p));
        for (int i = 0; i < n; ++i) {
            h ^= static_cast<std::size_t>(mpz_getlimbn(p, i)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }

    mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

// floor(r^(num/den) * 10^digits) for a nonnegative integer r; exact via
// integer nth-root. Building block for non-integer energy exponents.
inline mpz_class pow_floor_scaled(const mpz_class& r, unsigned long num, unsigned long den,
                                  unsigned long digits) {
    if (den == 0) throw DomainError("pow_floor_scaled: zero exponent denominator");
    if (r < 0) throw DomainError("pow_floor_scaled: negative base");
    mpz_class base;
    mpz_pow_ui(base.get_mpz_t(), r.get_mpz_t(), num);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits * den);
    base *= scale;
    mpz_class out;
    mpz_root(out.get_mpz_t(), base.get_mpz_t(), den);
    return out;
}

}  // namespace sumprod

template <>
struct std::hash<sumprod::Rational> {
    std::size_t operator()(const sumprod::Rational& r) const noexcept { return r.hash(); }
};
