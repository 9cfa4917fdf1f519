#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cyc24 {

// Exact arithmetic types used throughout. Desk-scale values would fit in 64
// bits, but arbitrary precision removes the need for overflow audits.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1)
            r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Euclidean remainder, always in [0, m).
inline std::int64_t emod(std::int64_t a, std::int64_t m)
{
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline Int emod(const Int& a, const Int& m)
{
    Int r = a % m;
    return r < 0 ? r + m : r;
}

// Inverse of a modulo m (extended Euclid); a and m must be coprime.
inline std::uint64_t modinv(std::uint64_t a, std::uint64_t m)
{
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(m), newr = static_cast<std::int64_t>(a % m);
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1)
        throw std::invalid_argument("modinv: arguments not coprime");
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

inline bool is_perfect_square(const Int& n, Int& root)
{
    if (n < 0)
        return false;
    root = boost::multiprecision::sqrt(n);
    return root * root == n;
}

inline bool is_integer(const Rat& r)
{
    return boost::multiprecision::denominator(r) == 1;
}

inline std::int64_t to_i64(const Int& v)
{
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("to_i64: value out of range");
    return v.convert_to<std::int64_t>();
}

// Canonical "num/den" rendering; denominator is always positive and present.
inline std::string rat_to_string(const Rat& r)
{
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

inline Rat rat_from_string(const std::string& s)
{
    auto slash = s.find('/');
    if (slash == std::string::npos)
        return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0)
        throw std::invalid_argument("rat_from_string: zero denominator");
    return Rat(num) / Rat(den);
}

} // namespace cyc24
