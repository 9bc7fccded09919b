#ifndef MUTGEN_RATIONAL_HPP
#define MUTGEN_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace mutgen {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Every measure computation in the library goes through this.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t v) : v_(v) {} // NOLINT: implicit by design of arithmetic
    Rational(const BigInt& num, const BigInt& den);

    /// 2^e for any integer e.
    static Rational pow2(std::int64_t e);
    /// Parses "p", "p/q" or "-p/q".
    static Rational parse(std::string_view text);

    BigInt num() const;
    BigInt den() const;

    bool is_zero() const { return v_ == 0; }
    bool is_positive() const { return v_ > 0; }

    /// "p/q" (always with a denominator, "0/1" for zero).
    std::string to_string() const;

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    boost::multiprecision::cpp_rational v_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace mutgen

#endif
