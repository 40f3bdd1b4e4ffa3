#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace geewe {

/*
 * Exact rational number with 64-bit numerator and denominator.
 *
 * Always normalised: den > 0 and gcd(|num|, den) == 1. Intermediate products
 * are formed in 128 bits; a result that does not fit back into 64 bits throws
 * std::overflow_error instead of wrapping.
 */
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT: implicit from integer
    Rational(std::int64_t num, std::int64_t den);

    /// Parses "p/q", "p", or a decimal such as "1.25" or "-0.5".
    static Rational parse(std::string_view text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// Exact "p/q" form; integers still carry "/1".
    std::string str() const;
    /// Rounded decimal with a fixed number of places.
    std::string decimal(int places = 6) const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    static Rational from_wide(__int128 num, __int128 den);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// Least common multiple of two positive denominators; throws on overflow.
std::int64_t lcm_checked(std::int64_t a, std::int64_t b);

}  // namespace geewe
