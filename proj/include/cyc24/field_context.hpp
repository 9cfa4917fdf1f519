#pragma once

#include "cyc24/errors.hpp"
#include "cyc24/numeric.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <vector>

namespace cyc24 {

// Deterministic Miller-Rabin, exact for the full 64-bit range.
inline bool is_prime(std::uint64_t u)
{
    if (u < 2)
        return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (u == q)
            return true;
        if (u % q == 0)
            return false;
    }
    std::uint64_t d = u - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set is a proven witness set for all u < 3.3e24.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, u);
        if (x == 1 || x == u - 1)
            continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, u);
            if (x == u - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

inline std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t m)
{
    std::vector<std::uint64_t> fs;
    for (std::uint64_t q = 2; q * q <= m; q += (q == 2 ? 1 : 2)) {
        if (m % q == 0) {
            fs.push_back(q);
            while (m % q == 0)
                m /= q;
        }
    }
    if (m > 1)
        fs.push_back(m);
    return fs;
}

// Least g >= 2 of multiplicative order p-1 modulo p.
inline std::uint64_t find_primitive_root(std::uint64_t p)
{
    if (!is_prime(p))
        throw NotPrime("find_primitive_root: " + std::to_string(p) + " is not prime");
    if (p == 2)
        return 1;
    auto factors = distinct_prime_factors(p - 1);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool primitive = true;
        for (std::uint64_t q : factors) {
            if (powmod(g, (p - 1) / q, p) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive)
            return g;
    }
    throw internal_error("find_primitive_root: no generator found"); // unreachable for prime p
}

// A prime p = n*f + 1 together with a primitive root g and the full index
// (discrete logarithm) table: g^ind(x) = x for x in 1..p-1. Immutable after
// construction; safe to share across threads.
struct PrimeContext {
    std::uint64_t p = 0;
    std::uint64_t n = 0;
    std::uint64_t f = 0;
    std::uint64_t g = 0;
    std::vector<std::uint32_t> ind; // ind[x] for x in 1..p-1; ind[0] unused

    std::uint32_t index_of(std::uint64_t x) const
    {
        x %= p;
        if (x == 0)
            throw ZeroElement("index_of: zero has no index");
        return ind[x];
    }

    // ind(x) mod m; x is an m-th power residue iff this is 0.
    std::uint64_t residue_class(std::uint64_t x, std::uint64_t m) const
    {
        return index_of(x) % m;
    }

    bool is_nth_power_residue(std::uint64_t x) const { return residue_class(x, n) == 0; }
};

// Builds the full index table in one multiplicative sweep, O(p).
inline PrimeContext build_context(std::uint64_t p, std::uint64_t n, std::uint64_t g)
{
    if (!is_prime(p))
        throw NotPrime("build_context: " + std::to_string(p) + " is not prime");
    if (n < 2 || (p - 1) % n != 0)
        throw NotOneModN("build_context: " + std::to_string(p) + " is not 1 mod " + std::to_string(n));
    g %= p;
    if (g == 0)
        throw NotPrimitive("build_context: generator is 0 mod p");

    PrimeContext ctx;
    ctx.p = p;
    ctx.n = n;
    ctx.f = (p - 1) / n;
    ctx.g = g;
    ctx.ind.assign(p, UINT32_MAX);
    std::uint64_t x = 1;
    for (std::uint64_t k = 0; k + 1 < p; ++k) {
        if (ctx.ind[x] != UINT32_MAX)
            throw NotPrimitive("build_context: " + std::to_string(g) + " is not a primitive root mod " + std::to_string(p));
        ctx.ind[x] = static_cast<std::uint32_t>(k);
        x = mulmod(x, g, p);
    }
    return ctx;
}

namespace detail {

inline void put_u64_le(std::ostream& os, std::uint64_t v)
{
    unsigned char b[8];
    for (int i = 0; i < 8; ++i)
        b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

inline void put_u32_le(std::ostream& os, std::uint32_t v)
{
    unsigned char b[4];
    for (int i = 0; i < 4; ++i)
        b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 4);
}

inline std::uint64_t get_u64_le(std::istream& is)
{
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

inline std::uint32_t get_u32_le(std::istream& is)
{
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

} // namespace detail

// On-disk cache of an index table, keyed by (p, g):
// header p, g as 8-byte little-endian unsigned, then p-1 little-endian
// 4-byte entries ind(1)..ind(p-1).
inline void save_context(const PrimeContext& ctx, const std::filesystem::path& file)
{
    std::ofstream os(file, std::ios::binary | std::ios::trunc);
    if (!os)
        throw input_error("save_context: cannot open " + file.string());
    detail::put_u64_le(os, ctx.p);
    detail::put_u64_le(os, ctx.g);
    for (std::uint64_t x = 1; x < ctx.p; ++x)
        detail::put_u32_le(os, ctx.ind[x]);
    if (!os)
        throw input_error("save_context: write failed for " + file.string());
}

inline PrimeContext load_context(const std::filesystem::path& file, std::uint64_t n)
{
    std::ifstream is(file, std::ios::binary);
    if (!is)
        throw input_error("load_context: cannot open " + file.string());
    PrimeContext ctx;
    ctx.p = detail::get_u64_le(is);
    ctx.g = detail::get_u64_le(is);
    if (!is || ctx.p < 3 || (ctx.p - 1) % n != 0)
        throw input_error("load_context: bad header in " + file.string());
    ctx.n = n;
    ctx.f = (ctx.p - 1) / n;
    ctx.ind.assign(ctx.p, UINT32_MAX);
    for (std::uint64_t x = 1; x < ctx.p; ++x)
        ctx.ind[x] = detail::get_u32_le(is);
    if (!is)
        throw input_error("load_context: truncated file " + file.string());
    if (ctx.ind[1] != 0 || ctx.ind[ctx.g % ctx.p] != 1)
        throw input_error("load_context: table fails sanity check in " + file.string());
    return ctx;
}

} // namespace cyc24
