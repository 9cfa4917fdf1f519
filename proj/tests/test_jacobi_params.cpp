#include "cyc24/jacobi_params.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <numeric>

using namespace cyc24;

namespace {

// All primitive roots of p, by index-coprimality against a base table.
std::vector<std::uint64_t> primitive_roots(std::uint64_t p)
{
    PrimeContext base = build_context(p, 24, find_primitive_root(p));
    std::vector<std::uint64_t> roots;
    for (std::uint64_t c = 2; c < p; ++c)
        if (std::gcd<std::uint64_t>(base.ind[c], p - 1) == 1)
            roots.push_back(c);
    return roots;
}

bool admissible(const PrimeContext& ctx)
{
    std::uint64_t z = ctx.ind[2] % 12, t = ctx.ind[3] % 8;
    return (z == 0 || z == 2 || z == 4 || z == 6) && (t == 0 || t == 2 || t == 4);
}

// Unique quadratic partition p = a^2 + k*b^2 with the stated congruence on a.
std::pair<Int, Int> partition_search(std::uint64_t p, int k, int mod, int rem)
{
    for (std::uint64_t b = 1; k * b * b < p; ++b) {
        std::uint64_t rest = p - k * b * b;
        Int root;
        if (is_perfect_square(Int(rest), root)) {
            for (Int a : {root, Int(-root)})
                if (emod(a, Int(mod)) == rem)
                    return {a, Int(b)};
        }
    }
    FAIL("no partition found");
    return {};
}

} // namespace

TEST_CASE("normalize_generator finds the least admissible generator")
{
    for (std::uint64_t p : {73ull, 97ull}) {
        PrimeContext ctx = normalize_generator(p);
        CHECK(admissible(ctx));

        // oracle: enumerate every primitive root and filter
        std::uint64_t least = 0;
        for (std::uint64_t g : primitive_roots(p)) {
            if (admissible(build_context(p, 24, g))) {
                least = g;
                break;
            }
        }
        REQUIRE(least != 0);
        CHECK(ctx.g == least);
    }
    CHECK(primitive_roots(73).size() == 24); // phi(72)
}

TEST_CASE("normalize_generator error path with a pinned candidate list")
{
    // 2 is not even a primitive root mod 73, so the restricted search fails.
    std::vector<std::uint64_t> only_two{2};
    CHECK_THROWS_AS(normalize_generator(73, only_two), NoAdmissibleGenerator);

    // a primitive but non-admissible candidate also fails
    std::uint64_t bad = 0;
    for (std::uint64_t g : primitive_roots(73))
        if (!admissible(build_context(73, 24, g))) {
            bad = g;
            break;
        }
    REQUIRE(bad != 0);
    std::vector<std::uint64_t> only_bad{bad};
    CHECK_THROWS_AS(normalize_generator(73, only_bad), NoAdmissibleGenerator);

    CHECK_THROWS_AS(normalize_generator(74), NotPrime);
    CHECK_THROWS_AS(normalize_generator(101), NotOneModN);
}

TEST_CASE("decompose into rank-2 sublattices")
{
    auto [r1, s1] = decompose(CycloInt(7), units::i());
    CHECK(r1 == 7);
    CHECK(s1 == 0);

    auto [r2, s2] = decompose(units::i_sqrt3(), units::i_sqrt3());
    CHECK(r2 == 0);
    CHECK(s2 == 1);

    CycloInt z(3);
    z.c[6] = 8;
    auto [r3, s3] = decompose(z, units::i());
    CHECK(r3 == 3);
    CHECK(s3 == 8);

    CHECK_THROWS_AS(decompose(beta_power(1), units::i()), NotInSpan);
    CHECK_THROWS_AS(decompose(beta_power(5), units::i_sqrt3()), NotInSpan);
}

TEST_CASE("extract_params at p=73 matches the quadratic partitions")
{
    PrimeContext ctx = normalize_generator(73);
    JacobiParams params = extract_params(ctx);

    CHECK(params.X == -3);
    CHECK(boost::multiprecision::abs(params.Y) == 4);
    CHECK(params.A == -5);
    CHECK(boost::multiprecision::abs(params.B) == 4);
    CHECK(params.C == 1);
    CHECK(boost::multiprecision::abs(params.D) == 6);
    CHECK(params.U == -7);
    CHECK(boost::multiprecision::abs(params.V) == 1);

    // deterministic: same p, same record
    JacobiParams again = extract_params(normalize_generator(73));
    CHECK(again.X == params.X);
    CHECK(again.Y == params.Y);
    CHECK(again.Dj == params.Dj);
}

TEST_CASE("extract_params satisfies every partition identity")
{
    for (std::uint64_t p : {73ull, 97ull, 193ull, 241ull, 313ull}) {
        PrimeContext ctx = normalize_generator(p);
        JacobiParams params = extract_params(ctx);
        Int P(p);
        CHECK(params.X * params.X + 4 * params.Y * params.Y == P);
        CHECK(params.A * params.A + 3 * params.B * params.B == P);
        CHECK(params.C * params.C + 2 * params.D * params.D == P);
        CHECK(params.U * params.U + 24 * params.V * params.V == P);
        CHECK(emod(params.X, Int(4)) == 1);
        CHECK(emod(params.A, Int(6)) == 1);
        CHECK(emod(params.C, Int(4)) == 1);
        CHECK(emod(params.U + params.C, Int(3)) == 0);

        // cross-check the pinned-sign values against direct partition search
        auto [x, y] = partition_search(p, 4, 4, 1);
        CHECK(params.X == x);
        CHECK(boost::multiprecision::abs(params.Y) == y);
        auto [a, b] = partition_search(p, 3, 6, 1);
        CHECK(params.A == a);
        CHECK(boost::multiprecision::abs(params.B) == b);
        auto [c, d] = partition_search(p, 2, 4, 1);
        CHECK(params.C == c);
        CHECK(boost::multiprecision::abs(params.D) == d);
    }
}

TEST_CASE("p=97 parameter values")
{
    JacobiParams params = extract_params(normalize_generator(97));
    CHECK(params.X == 9); // 97 = 81 + 16
    CHECK(boost::multiprecision::abs(params.Y) == 2);
    CHECK(params.A == 7); // 97 = 49 + 48
    CHECK(boost::multiprecision::abs(params.B) == 4);
    CHECK(params.C == 5); // 97 = 25 + 72
    CHECK(boost::multiprecision::abs(params.D) == 6);
    CHECK(params.U == 1); // 97 = 1 + 96, U = -C = 1 mod 3
    CHECK(boost::multiprecision::abs(params.V) == 2);
}

TEST_CASE("class tuples")
{
    PrimeContext c73 = normalize_generator(73);
    JacobiParams p73 = extract_params(c73);
    ClassTuple t73 = class_of(c73, p73);
    CHECK(t73.F1 == 1); // f = 3
    CHECK(t73 == p73.cls());

    PrimeContext c97 = normalize_generator(97);
    JacobiParams p97 = extract_params(c97);
    CHECK(class_of(c97, p97).F1 == 0); // f = 4

    for (std::uint64_t p : {73ull, 97ull, 193ull}) {
        PrimeContext ctx = normalize_generator(p);
        JacobiParams params = extract_params(ctx);
        ClassTuple cls = params.cls();
        CHECK((cls.Z == 0 || cls.Z == 2 || cls.Z == 4 || cls.Z == 6));
        CHECK((cls.T == 0 || cls.T == 2 || cls.T == 4));
        CHECK((cls.V1 == 0 || cls.V1 == 1));
    }
    CHECK(all_class_tuples().size() == 48);
}

TEST_CASE("extract_params rejects a non-normalized context")
{
    // 5 is the least primitive root of 73 but is not admissible (the
    // canonical generator is larger), so extraction must refuse it.
    PrimeContext raw = build_context(73, 24, 5);
    REQUIRE_FALSE(admissible(raw));
    CHECK_THROWS_AS(extract_params(raw), InvariantViolation);
}
