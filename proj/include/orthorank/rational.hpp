#ifndef ORTHORANK_RATIONAL_HPP
#define ORTHORANK_RATIONAL_HPP

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "orthorank/error.hpp"

namespace orthorank {

/// Exact rational in lowest terms with positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.str(); }

inline Rational parse_rational(std::string_view text) {
    auto parse_int = [&](std::string_view s, std::size_t offset) {
        if (s.empty()) throw ParseError("empty integer in rational", offset);
        std::size_t i = (s[0] == '-') ? 1 : 0;
        if (i == s.size()) throw ParseError("empty integer in rational", offset);
        for (std::size_t k = i; k < s.size(); ++k)
            if (s[k] < '0' || s[k] > '9') throw ParseError("non-digit in rational", offset + k);
        return BigInt(std::string(s));
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text, 0));
    const BigInt num = parse_int(text.substr(0, slash), 0);
    const BigInt den = parse_int(text.substr(slash + 1), slash + 1);
    if (den == 0) throw ParseError("zero denominator", slash + 1);
    return Rational(num, den);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigInt ceil(const Rational& r) {
    const BigInt num = numerator(r), den = denominator(r);
    BigInt q = num / den;  // truncates toward zero
    if (num > 0 && q * den != num) ++q;
    return q;
}

} // namespace orthorank

#endif // ORTHORANK_RATIONAL_HPP
