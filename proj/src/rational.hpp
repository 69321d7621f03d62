#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace twitch {

// Exact arithmetic for heuristic weights. Weight factors like 0.2 are not
// representable as doubles, and several contracts require exact equality.
using Rational = boost::rational<std::int64_t>;

// Parses a non-negative decimal literal ("0.2", "25", "1e9", "1.5e-2") into
// an exact rational.
inline Rational rational_from_decimal(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    std::size_t i = 0;
    auto digits = [&](std::int64_t& acc, std::size_t& count) {
        count = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
            acc = acc * 10 + (s[i] - '0');
            ++i;
            ++count;
        }
    };
    std::int64_t whole = 0, frac = 0;
    std::size_t nwhole = 0, nfrac = 0;
    digits(whole, nwhole);
    if (i < s.size() && s[i] == '.') {
        ++i;
        digits(frac, nfrac);
    }
    if (nwhole == 0 && nfrac == 0) throw std::invalid_argument("bad rational literal: " + std::string(s));
    std::int64_t exp10 = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool neg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
        std::int64_t e = 0;
        std::size_t ne = 0;
        digits(e, ne);
        if (ne == 0) throw std::invalid_argument("bad exponent in rational literal: " + std::string(s));
        exp10 = neg ? -e : e;
    }
    if (i != s.size()) throw std::invalid_argument("trailing characters in rational literal: " + std::string(s));

    std::int64_t den = 1;
    for (std::size_t k = 0; k < nfrac; ++k) den *= 10;
    Rational r(whole * den + frac, den);
    for (; exp10 > 0; --exp10) r *= 10;
    for (; exp10 < 0; ++exp10) r /= 10;
    return r;
}

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// Renders exactly: integers without a denominator, otherwise as a terminating
// decimal when the denominator divides a power of ten, else "num/den".
inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    std::int64_t den = r.denominator();
    int twos = 0, fives = 0;
    std::int64_t d = den;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d == 1 && twos <= 18 && fives <= 18) {
        int digits = twos > fives ? twos : fives;
        std::int64_t scale = 1;
        for (int k = 0; k < digits; ++k) scale *= 10;
        std::int64_t scaled = r.numerator() * (scale / den);
        std::string frac = std::to_string(scaled < 0 ? -scaled : scaled);
        if (static_cast<int>(frac.size()) <= digits) frac.insert(0, digits + 1 - frac.size(), '0');
        frac.insert(frac.size() - digits, ".");
        return (scaled < 0 ? "-" : "") + frac;
    }
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace twitch
