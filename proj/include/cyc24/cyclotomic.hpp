#pragma once

#include "cyc24/errors.hpp"
#include "cyc24/field_context.hpp"
#include "cyc24/numeric.hpp"

#include <array>
#include <cstdint>
#include <ostream>
#include <string>

namespace cyc24 {

// Exact element of Z[beta], beta = exp(2*pi*i/24), on the power basis
// 1, beta, ..., beta^7. The minimal polynomial of beta has degree 8 and
// gives the reduction rule beta^8 = beta^4 - 1; canonical values always
// have degree < 8, so equality is coefficient-array equality.
struct CycloInt {
    std::array<Int, 8> c{};

    CycloInt() = default;
    explicit CycloInt(Int constant) { c[0] = std::move(constant); }
    explicit CycloInt(long long constant) { c[0] = constant; }

    bool operator==(const CycloInt& o) const { return c == o.c; }
    bool operator!=(const CycloInt& o) const { return !(*this == o); }

    bool is_zero() const
    {
        for (const auto& v : c)
            if (v != 0)
                return false;
        return true;
    }

    bool is_constant() const
    {
        for (int j = 1; j < 8; ++j)
            if (c[j] != 0)
                return false;
        return true;
    }

    CycloInt operator-() const
    {
        CycloInt r;
        for (int j = 0; j < 8; ++j)
            r.c[j] = -c[j];
        return r;
    }

    CycloInt& operator+=(const CycloInt& o)
    {
        for (int j = 0; j < 8; ++j)
            c[j] += o.c[j];
        return *this;
    }

    CycloInt& operator-=(const CycloInt& o)
    {
        for (int j = 0; j < 8; ++j)
            c[j] -= o.c[j];
        return *this;
    }

    friend CycloInt operator+(CycloInt a, const CycloInt& b) { return a += b; }
    friend CycloInt operator-(CycloInt a, const CycloInt& b) { return a -= b; }

    friend CycloInt operator*(const CycloInt& a, const CycloInt& b)
    {
        std::array<Int, 15> prod{};
        for (int i = 0; i < 8; ++i) {
            if (a.c[i] == 0)
                continue;
            for (int j = 0; j < 8; ++j) {
                if (b.c[j] != 0)
                    prod[i + j] += a.c[i] * b.c[j];
            }
        }
        // Reduce from the top: beta^k = beta^(k-4) - beta^(k-8) for k >= 8.
        for (int k = 14; k >= 8; --k) {
            if (prod[k] == 0)
                continue;
            prod[k - 4] += prod[k];
            prod[k - 8] -= prod[k];
            prod[k] = 0;
        }
        CycloInt r;
        for (int j = 0; j < 8; ++j)
            r.c[j] = std::move(prod[j]);
        return r;
    }

    CycloInt& operator*=(const CycloInt& o) { return *this = *this * o; }

    friend CycloInt operator*(const Int& k, CycloInt a)
    {
        for (auto& v : a.c)
            v *= k;
        return a;
    }

    std::string str() const
    {
        std::string s = "(";
        for (int j = 0; j < 8; ++j) {
            if (j)
                s += ",";
            s += c[j].str();
        }
        return s + ")";
    }

    friend std::ostream& operator<<(std::ostream& os, const CycloInt& v) { return os << v.str(); }
};

// Canonical form of beta^(k mod 24).
inline CycloInt beta_power(long long k)
{
    int r = static_cast<int>(emod(static_cast<std::int64_t>(k), 24));
    std::array<Int, 24> scratch{};
    scratch[r] = 1;
    for (int j = 23; j >= 8; --j) {
        if (scratch[j] == 0)
            continue;
        scratch[j - 4] += scratch[j];
        scratch[j - 8] -= scratch[j];
        scratch[j] = 0;
    }
    CycloInt v;
    for (int j = 0; j < 8; ++j)
        v.c[j] = std::move(scratch[j]);
    return v;
}

// Complex conjugation, the ring map beta -> beta^23.
inline CycloInt conjugate(const CycloInt& a)
{
    CycloInt r;
    for (int j = 0; j < 8; ++j) {
        if (a.c[j] == 0)
            continue;
        r += a.c[j] * beta_power((24 - j) % 24);
    }
    return r;
}

// Per-exponent-class counts of the Jacobi sum J(u,v): for x = 2..p-1 the
// summand is beta^(ind(x)*u + ind(1-x)*v); counting exponent classes mod 24
// first keeps the whole computation at O(p) integer additions.
inline std::array<std::uint64_t, 24> jacobi_class_counts(const PrimeContext& ctx, int u, int v)
{
    if (ctx.n != 24)
        throw InvariantViolation("jacobi_sum: context order must be 24");
    std::uint64_t uu = static_cast<std::uint64_t>(emod(static_cast<std::int64_t>(u), 24));
    std::uint64_t vv = static_cast<std::uint64_t>(emod(static_cast<std::int64_t>(v), 24));
    std::array<std::uint64_t, 24> counts{};
    const std::uint32_t* ind = ctx.ind.data();
    const std::uint64_t p = ctx.p;
    for (std::uint64_t x = 2; x < p; ++x) {
        // 1-x mod p = p+1-x for x in 2..p-1
        std::uint64_t e = (ind[x] * uu + ind[p + 1 - x] * vv) % 24;
        ++counts[e];
    }
    return counts;
}

inline CycloInt jacobi_sum(const PrimeContext& ctx, int u, int v)
{
    auto counts = jacobi_class_counts(ctx, u, v);
    CycloInt r;
    for (int e = 0; e < 24; ++e) {
        if (counts[e])
            r += Int(counts[e]) * beta_power(e);
    }
    return r;
}

} // namespace cyc24
