#include "mutgen/rational.hpp"

#include <ostream>

#include "mutgen/errors.hpp"

namespace mutgen {

Rational::Rational(const BigInt& num, const BigInt& den)
{
    if (den == 0)
        throw PreconditionError("rational with zero denominator");
    v_ = boost::multiprecision::cpp_rational(num, den);
}

Rational Rational::pow2(std::int64_t e)
{
    BigInt p = 1;
    std::int64_t a = e < 0 ? -e : e;
    p <<= static_cast<unsigned>(a);
    return e >= 0 ? Rational(p, 1) : Rational(1, p);
}

Rational Rational::parse(std::string_view text)
{
    auto parse_int = [&](std::string_view s) {
        if (s.empty())
            throw UsageError("empty integer in rational '" + std::string(text) + "'");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size())
            throw UsageError("bad rational '" + std::string(text) + "'");
        for (std::size_t k = i; k < s.size(); ++k)
            if (s[k] < '0' || s[k] > '9')
                throw UsageError("bad rational '" + std::string(text) + "'");
        return BigInt(std::string(s));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_int(text), 1);
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

BigInt Rational::num() const { return boost::multiprecision::numerator(v_); }
BigInt Rational::den() const { return boost::multiprecision::denominator(v_); }

std::string Rational::to_string() const
{
    return num().str() + "/" + den().str();
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.v_ == 0)
        throw PreconditionError("division by zero rational");
    v_ /= o.v_;
    return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    if (a.v_ < b.v_)
        return std::strong_ordering::less;
    if (a.v_ > b.v_)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r)
{
    return os << r.to_string();
}

} // namespace mutgen
