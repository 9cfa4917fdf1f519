#pragma once

#include "cyc24/cyclotomic.hpp"
#include "cyc24/errors.hpp"
#include "cyc24/field_context.hpp"
#include "cyc24/numeric.hpp"

#include <array>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace cyc24 {

// The 4-tuple selecting one of the 48 coefficient tables:
// F1 = f mod 2, V1 = V mod 2, Z = ind(2) mod 12, T = ind(3) mod 8,
// taken with respect to a normalized generator (Z in {0,2,4,6}, T in {0,2,4}).
struct ClassTuple {
    int F1 = 0;
    int V1 = 0;
    int Z = 0;
    int T = 0;

    auto operator<=>(const ClassTuple&) const = default;

    std::string tag() const
    {
        return std::to_string(F1) + "_" + std::to_string(V1) + "_" +
               std::to_string(Z) + "_" + std::to_string(T);
    }

    std::string str() const
    {
        return "(" + std::to_string(F1) + "," + std::to_string(V1) + "," +
               std::to_string(Z) + "," + std::to_string(T) + ")";
    }
};

inline std::vector<ClassTuple> all_class_tuples()
{
    std::vector<ClassTuple> out;
    for (int F1 = 0; F1 <= 1; ++F1)
        for (int V1 = 0; V1 <= 1; ++V1)
            for (int Z : {0, 2, 4, 6})
                for (int T : {0, 2, 4})
                    out.push_back({F1, V1, Z, T});
    return out;
}

// Fixed square roots inside Z[beta], verified by squaring in the tests:
// i = beta^6, i*sqrt(3) = 2*beta^4 - 1, i*sqrt(2) = beta^3 + beta^5 - beta,
// i*sqrt(6) = (i*sqrt(2)) * (2*beta^2 - beta^6).
namespace units {

inline const CycloInt& i()
{
    static const CycloInt v = beta_power(6);
    return v;
}

inline const CycloInt& i_sqrt3()
{
    static const CycloInt v = Int(2) * beta_power(4) - CycloInt(1);
    return v;
}

inline const CycloInt& i_sqrt2()
{
    static const CycloInt v = beta_power(3) + beta_power(5) - beta_power(1);
    return v;
}

inline const CycloInt& sqrt3()
{
    static const CycloInt v = Int(2) * beta_power(2) - beta_power(6);
    return v;
}

inline const CycloInt& i_sqrt6()
{
    static const CycloInt v = i_sqrt2() * sqrt3();
    return v;
}

} // namespace units

// Unique integers (r, s) with z = r + s*w, for w one of the units above.
// Uniqueness holds because {1, w} is independent over the power basis;
// NotInSpan signals a malformed Jacobi sum or a wrong (u,v) pair.
inline std::pair<Int, Int> decompose(const CycloInt& z, const CycloInt& w)
{
    bool have_s = false;
    Int s = 0;
    for (int j = 1; j < 8; ++j) {
        if (w.c[j] == 0) {
            if (z.c[j] != 0)
                throw NotInSpan("decompose: coordinate " + std::to_string(j) + " outside span");
            continue;
        }
        if (z.c[j] % w.c[j] != 0)
            throw NotInSpan("decompose: coordinate " + std::to_string(j) + " not divisible");
        Int cand = z.c[j] / w.c[j];
        if (have_s && cand != s)
            throw NotInSpan("decompose: inconsistent coordinates");
        s = cand;
        have_s = true;
    }
    if (!have_s)
        throw NotInSpan("decompose: second basis element is constant");
    Int r = z.c[0] - s * w.c[0];
    return {r, s};
}

// The sixteen integers of the five Jacobi sums J(6,12), J(4,12), J(3,12),
// J(1,12), J(1,2), plus the class tuple. Signs of X, A, C, U are pinned by
// the quadratic-partition congruences; Y, B, D, V, D_j are whatever the sums
// produce under the canonical generator.
struct JacobiParams {
    Int X, Y, A, B, C, D, U, V;
    std::array<Int, 8> Dj{};
    int F1 = 0, V1 = 0, Z = 0, T = 0;

    ClassTuple cls() const { return {F1, V1, Z, T}; }

    // Values in the fixed evaluation order (p, 1, X, Y, A, B, C, D, U, V, D0..D7).
    std::array<Int, 18> observation(std::uint64_t p) const
    {
        std::array<Int, 18> o;
        o[0] = p;
        o[1] = 1;
        o[2] = X;
        o[3] = Y;
        o[4] = A;
        o[5] = B;
        o[6] = C;
        o[7] = D;
        o[8] = U;
        o[9] = V;
        for (int j = 0; j < 8; ++j)
            o[10 + j] = Dj[j];
        return o;
    }
};

inline const std::array<std::string, 18>& observation_names()
{
    static const std::array<std::string, 18> names = {
        "p", "1", "X", "Y", "A", "B", "C", "D", "U", "V",
        "D0", "D1", "D2", "D3", "D4", "D5", "D6", "D7"};
    return names;
}

namespace detail {

inline bool admissible_index_pair(std::uint64_t ind2_mod12, std::uint64_t ind3_mod8)
{
    return (ind2_mod12 == 0 || ind2_mod12 == 2 || ind2_mod12 == 4 || ind2_mod12 == 6) &&
           (ind3_mod8 == 0 || ind3_mod8 == 2 || ind3_mod8 == 4);
}

// Tries candidate residue c as a normalized generator. A generator change
// g -> g^u remaps every index by u^-1 mod (p-1), so testing a candidate is
// O(1) against an existing base table; only a hit pays the O(p) remap.
inline bool admissible_remap(const PrimeContext& base, std::uint64_t c, PrimeContext& out)
{
    const std::uint64_t p = base.p, order = p - 1;
    c %= p;
    if (c < 2)
        return false;
    std::uint64_t u = base.ind[c];
    if (std::gcd(u, order) != 1)
        return false; // not a primitive root
    std::uint64_t uinv = modinv(u, order);
    if (!admissible_index_pair(mulmod(uinv, base.ind[2], order) % 12,
                               mulmod(uinv, base.ind[3], order) % 8))
        return false;
    if (c == base.g) {
        out = base;
        return true;
    }
    out.p = p;
    out.n = 24;
    out.f = order / 24;
    out.g = c;
    out.ind.assign(p, UINT32_MAX);
    for (std::uint64_t x = 1; x < p; ++x)
        out.ind[x] = static_cast<std::uint32_t>(uinv * base.ind[x] % order);
    return true;
}

inline PrimeContext base_context_for_normalization(std::uint64_t p)
{
    if (!is_prime(p))
        throw NotPrime("normalize_generator: " + std::to_string(p) + " is not prime");
    if ((p - 1) % 24 != 0)
        throw NotOneModN("normalize_generator: " + std::to_string(p) + " is not 1 mod 24");
    return build_context(p, 24, find_primitive_root(p));
}

} // namespace detail

// Least generator with ind(2) mod 12 in {0,2,4,6} and ind(3) mod 8 in
// {0,2,4}. An admissible generator always exists; the error is surfaced
// rather than silently ignored in case a restricted candidate list misses.
inline PrimeContext normalize_generator(std::uint64_t p, std::span<const std::uint64_t> candidates)
{
    PrimeContext base = detail::base_context_for_normalization(p);
    PrimeContext ctx;
    for (std::uint64_t c : candidates)
        if (detail::admissible_remap(base, c, ctx))
            return ctx;
    throw NoAdmissibleGenerator("normalize_generator: no admissible generator for p=" + std::to_string(p));
}

inline PrimeContext normalize_generator(std::uint64_t p)
{
    PrimeContext base = detail::base_context_for_normalization(p);
    PrimeContext ctx;
    for (std::uint64_t c = 2; c < p; ++c)
        if (detail::admissible_remap(base, c, ctx))
            return ctx;
    throw NoAdmissibleGenerator("normalize_generator: no admissible generator for p=" + std::to_string(p));
}

namespace detail {

// One O(p) pass accumulating the exponent-class counts of all five sums
// J(6,12), J(4,12), J(3,12), J(1,12), J(1,2) at once.
inline std::array<std::array<std::uint64_t, 24>, 5> five_jacobi_counts(const PrimeContext& ctx)
{
    static constexpr int uv[5][2] = {{6, 12}, {4, 12}, {3, 12}, {1, 12}, {1, 2}};
    // exps[a][b][k] = (a*u_k + b*v_k) mod 24 for index residues a, b
    static const auto exps = [] {
        std::array<std::array<std::array<std::uint8_t, 5>, 24>, 24> t{};
        for (int a = 0; a < 24; ++a)
            for (int b = 0; b < 24; ++b)
                for (int k = 0; k < 5; ++k)
                    t[a][b][k] = static_cast<std::uint8_t>((a * uv[k][0] + b * uv[k][1]) % 24);
        return t;
    }();

    std::array<std::array<std::uint64_t, 24>, 5> counts{};
    const std::uint32_t* ind = ctx.ind.data();
    const std::uint64_t p = ctx.p;
    for (std::uint64_t x = 2; x < p; ++x) {
        const auto& e = exps[ind[x] % 24][ind[p + 1 - x] % 24];
        for (int k = 0; k < 5; ++k)
            ++counts[k][e[k]];
    }
    return counts;
}

inline CycloInt counts_to_cyclo(const std::array<std::uint64_t, 24>& counts)
{
    CycloInt r;
    for (int e = 0; e < 24; ++e)
        if (counts[e])
            r += Int(counts[e]) * beta_power(e);
    return r;
}

inline void check_partition(const char* name, const Int& p, const Int& lhs)
{
    if (lhs != p)
        throw InvariantViolation(std::string("extract_params: partition ") + name + " violated");
}

inline void check_norm(const char* name, const Int& p, const CycloInt& J)
{
    CycloInt norm = J * conjugate(J);
    if (!norm.is_constant() || norm.c[0] != p)
        throw InvariantViolation(std::string("extract_params: |J|^2 != p for ") + name);
}

} // namespace detail

// Reads the sixteen parameters off the five Jacobi sums:
// J(6,12) = -X + 2Yi, J(4,12) = -A + B*i*sqrt(3), J(3,12) = -C + D*i*sqrt(2),
// J(1,12) = U + 2V*i*sqrt(6), J(1,2) = sum D_j beta^j; every invariant is
// validated before returning.
inline JacobiParams extract_params(const PrimeContext& ctx)
{
    if (ctx.n != 24)
        throw InvariantViolation("extract_params: context order must be 24");
    const std::uint64_t z_ = ctx.ind[2] % 12, t_ = ctx.ind[3] % 8;
    if (!detail::admissible_index_pair(z_, t_))
        throw InvariantViolation("extract_params: context generator is not normalized");

    auto counts = detail::five_jacobi_counts(ctx);
    CycloInt J612 = detail::counts_to_cyclo(counts[0]);
    CycloInt J412 = detail::counts_to_cyclo(counts[1]);
    CycloInt J312 = detail::counts_to_cyclo(counts[2]);
    CycloInt J112 = detail::counts_to_cyclo(counts[3]);
    CycloInt J12 = detail::counts_to_cyclo(counts[4]);

    const Int p = ctx.p;
    JacobiParams out;

    auto [r1, s1] = decompose(J612, units::i());
    if (s1 % 2 != 0)
        throw InvariantViolation("extract_params: odd i-coordinate in J(6,12)");
    out.X = -r1;
    out.Y = s1 / 2;

    auto [r2, s2] = decompose(J412, units::i_sqrt3());
    out.A = -r2;
    out.B = s2;

    auto [r3, s3] = decompose(J312, units::i_sqrt2());
    out.C = -r3;
    out.D = s3;

    auto [r4, s4] = decompose(J112, units::i_sqrt6());
    if (s4 % 2 != 0)
        throw InvariantViolation("extract_params: odd i*sqrt(6)-coordinate in J(1,12)");
    out.U = r4;
    out.V = s4 / 2;

    out.Dj = J12.c;

    detail::check_partition("p = X^2 + 4Y^2", p, out.X * out.X + 4 * out.Y * out.Y);
    detail::check_partition("p = A^2 + 3B^2", p, out.A * out.A + 3 * out.B * out.B);
    detail::check_partition("p = C^2 + 2D^2", p, out.C * out.C + 2 * out.D * out.D);
    detail::check_partition("p = U^2 + 24V^2", p, out.U * out.U + 24 * out.V * out.V);
    if (emod(out.X, Int(4)) != 1)
        throw InvariantViolation("extract_params: X != 1 mod 4");
    if (emod(out.A, Int(6)) != 1)
        throw InvariantViolation("extract_params: A != 1 mod 6");
    if (emod(out.C, Int(4)) != 1)
        throw InvariantViolation("extract_params: C != 1 mod 4");
    if (emod(out.U + out.C, Int(3)) != 0)
        throw InvariantViolation("extract_params: U != -C mod 3");
    if (out.Y == 0 || out.B == 0 || out.D == 0 || out.V == 0)
        throw InvariantViolation("extract_params: degenerate partition (p would be a square)");
    detail::check_norm("J(6,12)", p, J612);
    detail::check_norm("J(4,12)", p, J412);
    detail::check_norm("J(3,12)", p, J312);
    detail::check_norm("J(1,12)", p, J112);
    detail::check_norm("J(1,2)", p, J12);

    out.F1 = static_cast<int>(ctx.f % 2);
    out.V1 = static_cast<int>(emod(out.V, Int(2)));
    out.Z = static_cast<int>(z_);
    out.T = static_cast<int>(t_);
    return out;
}

inline ClassTuple class_of(const PrimeContext& ctx, const JacobiParams& params)
{
    return {static_cast<int>(ctx.f % 2), static_cast<int>(emod(params.V, Int(2))),
            static_cast<int>(ctx.ind[2] % 12), static_cast<int>(ctx.ind[3] % 8)};
}

} // namespace cyc24
