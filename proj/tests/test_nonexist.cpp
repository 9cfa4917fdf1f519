#include "cyc24/harvest.hpp"
#include "cyc24/nonexistence.hpp"
#include "cyc24/serialize.hpp"
#include "test_support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace cyc24;

namespace {

AffineSolution make_solution(std::vector<std::string> vars, RatVector particular,
                             std::vector<RatVector> basis)
{
    AffineSolution sol;
    sol.variables = std::move(vars);
    sol.particular = std::move(particular);
    sol.basis = std::move(basis);
    return sol;
}

} // namespace

TEST_CASE("verify_addition_set positive controls")
{
    DSReport r1 = verify_addition_set(7, 2, 0, 1);
    CHECK(r1.is_set);
    REQUIRE(r1.lambda.has_value());
    CHECK(*r1.lambda == 1);

    // qualifier 2 is a nonresidue mod 5
    DSReport r2 = verify_addition_set(5, 2, 0, 2);
    CHECK(r2.is_set);
    CHECK(*r2.lambda == 1);

    for (int eps : {0, 1}) {
        DSReport r3 = verify_addition_set(73, 24, eps, 1);
        CHECK_FALSE(r3.is_set);
        CHECK_FALSE(r3.lambda.has_value());
    }

    CHECK_THROWS_AS(verify_addition_set(8, 2, 0, 1), NotPrime);
    CHECK_THROWS_AS(verify_addition_set(7, 4, 0, 1), NotOneModN);
    CHECK_THROWS_AS(verify_addition_set(7, 2, 0, 7), input_error);
    CHECK_THROWS_AS(verify_addition_set(7, 2, 2, 1), input_error);
}

TEST_CASE("lambda counting identity")
{
    // when is_set holds, all p-1 difference counts are equal, so the total
    // count of nonzero differences is lambda*(p-1)
    for (auto [p, n, eps, m] : {std::tuple{7ull, 2ull, 0, 1ull}, {5ull, 2ull, 0, 2ull},
                                {13ull, 4ull, 1, 1ull}}) {
        DSReport rep = verify_addition_set(p, n, eps, m);
        if (!rep.is_set)
            continue;
        std::uint64_t h = (p - 1) / n + (eps == 1 ? 1 : 0);
        std::uint64_t zero_diffs = 0;
        PrimeContext ctx = build_context(p, n, find_primitive_root(p));
        std::vector<std::uint64_t> H;
        for (std::uint64_t x = 1; x < p; ++x)
            if (ctx.ind[x] % n == 0)
                H.push_back(x);
        if (eps == 1)
            H.push_back(0);
        for (std::uint64_t s : H)
            for (std::uint64_t t : H)
                if ((s + p - mulmod(m, t, p)) % p == 0)
                    ++zero_diffs;
        CHECK(static_cast<std::uint64_t>(*rep.lambda) * (p - 1) == h * h - zero_diffs);
    }
}

TEST_CASE("build_system structure and guards")
{
    const auto& world = test::small_world();

    SystemSpec sys = build_system(world.table_odd, Mode::difference, 0);
    CHECK(sys.M.size() == 11);
    CHECK(sys.variables.size() == (world.cls_odd.T == 0 ? 8 : 10));
    for (const auto& v : sys.h)
        CHECK(v == -2);
    SystemSpec sys1 = build_system(world.table_odd, Mode::difference, 1);
    for (const auto& v : sys1.h)
        CHECK(v == 46);

    // parity guard
    CHECK_THROWS_AS(build_system(world.table_odd, Mode::qualified, 0), ClassMismatch);
    CHECK_THROWS_AS(build_system(world.table_even, Mode::difference, 0), ClassMismatch);

    // tampered constant triggers the structure assertion
    CoeffTable broken = world.table_even;
    broken.row(3, 12).coeffs[obs_index::ONE] = 7;
    CHECK_THROWS_AS(build_system(broken, Mode::qualified, 0), StructureViolation);

    SystemSpec full = build_system_full(world.table_even, Mode::qualified, 0);
    CHECK(full.variables.size() == 16);
    CHECK(full.M[0].size() == 16);
}

TEST_CASE("forced_value_check flags zero and non-integer constants")
{
    auto sol = make_solution({"X", "Y", "B"}, {Rat(3), Rat(1), Rat(0)}, {});
    auto findings = forced_value_check(sol);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].verdict == Verdict::ForcedZero);
    CHECK(findings[0].variable == "B");

    auto sol2 = make_solution({"X", "Y"}, {Rat(-1) / 23, Rat(2)}, {});
    auto findings2 = forced_value_check(sol2);
    REQUIRE(findings2.size() == 1);
    CHECK(findings2[0].verdict == Verdict::ForcedNonInteger);
    CHECK(findings2[0].variable == "X");
    CHECK(findings2[0].value == Rat(-1) / 23);

    // parameter-dependent coordinates are not forced
    auto sol3 = make_solution({"X", "Y"}, {Rat(1) / 2, Rat(0)},
                              {RatVector{Rat(1), Rat(1)}});
    CHECK(forced_value_check(sol3).empty());

    auto sol4 = make_solution({"X", "Y"}, {Rat(5), Rat(2)}, {});
    CHECK(forced_value_check(sol4).empty());
}

TEST_CASE("partition_contradiction reproduces the published shapes")
{
    SECTION("one-parameter shape with roots (4-96e)/37")
    {
        for (int eps : {0, 1}) {
            // X = 1-24e-16a, Y = a, A = -1+24e+8a, B = -4a
            auto sol = make_solution(
                {"X", "Y", "A", "B"},
                {Rat(1 - 24 * eps), Rat(0), Rat(-1 + 24 * eps), Rat(0)},
                {RatVector{Rat(-16), Rat(1), Rat(8), Rat(-4)}});
            PartitionOutcome out = partition_contradiction(sol);
            REQUIRE(out.finding.has_value());
            CHECK(out.finding->verdict == Verdict::PartitionNonIntegerRoot);
            Rat expected = Rat(4 - 96 * eps) / 37;
            bool found = false;
            for (const auto& r : out.roots)
                found = found || r == expected;
            CHECK(found);
        }
    }

    SECTION("two-parameter homogeneous shape, square-class failure")
    {
        for (int eps : {0, 1}) {
            // X = A = 1-24e, Y = a, B = 2b: 4a^2 = 12b^2 has no nonzero solution
            auto sol = make_solution(
                {"X", "Y", "A", "B"},
                {Rat(1 - 24 * eps), Rat(0), Rat(1 - 24 * eps), Rat(0)},
                {RatVector{Rat(0), Rat(1), Rat(0), Rat(0)},
                 RatVector{Rat(0), Rat(0), Rat(0), Rat(2)}});
            PartitionOutcome out = partition_contradiction(sol);
            REQUIRE(out.finding.has_value());
            CHECK(out.finding->verdict == Verdict::PartitionNoRationalRoot);
        }
    }

    SECTION("scaled one-parameter shape yields the known root pair")
    {
        for (int eps : {0, 1}) {
            Rat e(eps);
            auto sol = make_solution(
                {"X", "Y", "A", "B"},
                {Rat(-1 + 24 * eps) / 23, Rat(0), Rat(9 * (-1 + 24 * eps)) / 23, Rat(0)},
                {RatVector{Rat(192), Rat(92), Rat(256), Rat(138)}});
            PartitionOutcome out = partition_contradiction(sol);
            REQUIRE(out.finding.has_value());
            CHECK(out.finding->verdict == Verdict::PartitionNonIntegerRoot);
            Rat r1 = Rat(2 - 48 * eps) / 897;
            Rat r2 = Rat(10 - 240 * eps) / 7659;
            bool f1 = false, f2 = false;
            for (const auto& r : out.roots) {
                f1 = f1 || r == r1;
                f2 = f2 || r == r2;
            }
            CHECK(f1);
            CHECK(f2);
        }
    }

    SECTION("irrational roots")
    {
        // X = 1+2a, Y = a, A = 2, B = 1: 8a^2 + 4a - 6 = 0 has discriminant 208
        auto sol = make_solution({"X", "Y", "A", "B"}, {Rat(1), Rat(0), Rat(2), Rat(1)},
                                 {RatVector{Rat(2), Rat(1), Rat(0), Rat(0)}});
        PartitionOutcome out = partition_contradiction(sol);
        REQUIRE(out.finding.has_value());
        CHECK(out.finding->verdict == Verdict::PartitionNoRationalRoot);
        CHECK(out.finding->detail.find("irrational") != std::string::npos);
    }

    SECTION("constant shapes")
    {
        auto bad = make_solution({"X", "Y", "A", "B"}, {Rat(1), Rat(2), Rat(1), Rat(1)}, {});
        PartitionOutcome out = partition_contradiction(bad);
        REQUIRE(out.finding.has_value());
        CHECK(out.finding->verdict == Verdict::PartitionNoRationalRoot);

        // the p=73 parameter values satisfy both partitions exactly
        auto good = make_solution({"X", "Y", "A", "B"}, {Rat(-3), Rat(4), Rat(-5), Rat(4)}, {});
        PartitionOutcome out2 = partition_contradiction(good);
        CHECK_FALSE(out2.finding.has_value());
        CHECK(out2.enumerated);
        REQUIRE(out2.survivors.size() == 1);
    }
}

TEST_CASE("extended partition pairs reject inconsistent C,D and U,V values")
{
    // p = 73 values: pass with and without the extra pairs
    auto good = make_solution({"X", "Y", "A", "B", "C", "D", "U", "V"},
                              {Rat(-3), Rat(4), Rat(-5), Rat(4), Rat(1), Rat(6), Rat(-7), Rat(-1)},
                              {});
    CHECK_FALSE(partition_contradiction(good, false).finding.has_value());
    CHECK_FALSE(partition_contradiction(good, true).finding.has_value());

    // corrupt C: invisible to the default pair, caught by the extended check
    auto bad = make_solution({"X", "Y", "A", "B", "C", "D", "U", "V"},
                             {Rat(-3), Rat(4), Rat(-5), Rat(4), Rat(3), Rat(6), Rat(-7), Rat(-1)},
                             {});
    CHECK_FALSE(partition_contradiction(bad, false).finding.has_value());
    PartitionOutcome out = partition_contradiction(bad, true);
    REQUIRE(out.finding.has_value());
    CHECK(out.survivors.empty());
}

TEST_CASE("auxiliary_relation_check trivial cases")
{
    const auto& world = test::small_world();
    auto sol = make_solution({"X", "Y", "A", "B"}, {Rat(-3), Rat(4), Rat(-5), Rat(4)}, {});
    AuxiliaryOutcome none = auxiliary_relation_check(world.table_odd, sol, {});
    CHECK_FALSE(none.finding.has_value());
    CHECK(none.survivors.empty());

    // p = 73 with its real parameters passes every residual test
    auto odd = world.harvest.class_primes(world.cls_odd);
    REQUIRE(odd[0].p == 73);
    const JacobiParams& prm = odd[0].params;
    auto full = make_solution(
        {"X", "Y", "A", "B", "C", "D", "U", "V", "D0", "D1", "D2", "D3", "D4", "D5", "D6", "D7"},
        {Rat(prm.X), Rat(prm.Y), Rat(prm.A), Rat(prm.B), Rat(prm.C), Rat(prm.D), Rat(prm.U),
         Rat(prm.V), Rat(prm.Dj[0]), Rat(prm.Dj[1]), Rat(prm.Dj[2]), Rat(prm.Dj[3]),
         Rat(prm.Dj[4]), Rat(prm.Dj[5]), Rat(prm.Dj[6]), Rat(prm.Dj[7])},
        {});
    AuxiliaryOutcome ok = auxiliary_relation_check(world.table_odd, full, {RatVector{}});
    CHECK_FALSE(ok.finding.has_value());
    CHECK(ok.survivors.size() == 1);
}

TEST_CASE("normalize_basis produces primitive integer vectors")
{
    auto sol = make_solution({"X", "Y", "B"}, {Rat(0), Rat(0), Rat(0)},
                             {RatVector{Rat(-1) / 2, Rat(1), Rat(3) / 2}});
    normalize_basis(sol);
    CHECK(sol.basis[0] == RatVector{Rat(-1), Rat(2), Rat(3)});
}

TEST_CASE("analyze_class on the small-world tables")
{
    const auto& world = test::small_world();
    for (int eps : {0, 1}) {
        ContradictionReport diff = analyze_class(world.table_odd, Mode::difference, eps);
        CHECK(diff.mode == Mode::difference);
        CHECK(diff.epsilon == eps);
        ContradictionReport qual = analyze_class(world.table_even, Mode::qualified, eps);
            CHECK(diff.is_contradiction());
        CHECK(qual.is_contradiction());
        CHECK_FALSE(diff.rows_used.empty());

        Json j = report_to_json(diff);
        CHECK(j.at("mode") == "difference");
        CHECK(j.at("epsilon") == eps);
        CHECK(j.at("class").at("F1") == 1);
    }
    CHECK_THROWS_AS(analyze_class(world.table_odd, Mode::qualified, 0), ClassMismatch);
}

TEST_CASE("report CSV flattening")
{
    const auto& world = test::small_world();
    ContradictionReport rep = analyze_class(world.table_odd, Mode::difference, 0);
    std::ostringstream os;
    reports_to_csv({rep}, os);
    std::string text = os.str();
    CHECK(text.find("F1,V1,Z,T,mode,epsilon,verdict") == 0);
    CHECK(text.find("1,1,4,2,difference,0,") != std::string::npos);
}

TEST_CASE("soundness cross-check on held-out primes")
{
    // real primes never satisfy the difference-set right-hand side
    const auto& world = test::small_world();
    auto odd = world.harvest.class_primes(world.cls_odd);
    for (const auto& pd : odd) {
        for (int eps : {0, 1}) {
            bool all_match = true;
            for (int s = 1; s <= 11 && all_match; ++s) {
                Int gamma = Int(576) * pd.counts.at(s, 0) - Int(pd.p) + 23;
                all_match = gamma == Int(-2 + 48 * eps);
            }
            CHECK_FALSE(all_match);
        }
    }
}

TEST_CASE("direct_criterion_scan small bounds")
{
    ScanResult r73 = direct_criterion_scan(73, Mode::difference, 1);
    CHECK(r73.records.size() == 1);
    CHECK(r73.survivors.empty());

    ScanResult rq = direct_criterion_scan(1000, Mode::qualified, 2);
    CHECK(rq.survivors.empty());
    ScanResult rd = direct_criterion_scan(1000, Mode::difference, 2);
    CHECK(rd.survivors.empty());
    CHECK(rq.records.size() == rd.records.size());

    CHECK_THROWS_AS(direct_criterion_scan(50, Mode::difference, 1), input_error);
}

TEST_CASE("criterion verdicts are generator independent")
{
    for (std::uint64_t p : {73ull, 97ull, 193ull, 241ull}) {
        PrimeContext base = build_context(p, 24, find_primitive_root(p));
        // second primitive root
        std::uint64_t g2 = 0;
        for (std::uint64_t c = base.g + 1; c < p; ++c)
            if (std::gcd<std::uint64_t>(base.ind[c], p - 1) == 1) {
                g2 = c;
                break;
            }
        REQUIRE(g2 != 0);
        PrimeContext other = build_context(p, 24, g2);

        for (Mode mode : {Mode::difference, Mode::qualified}) {
            const int t = mode == Mode::difference ? 0 : 12;
            for (int eps : {0, 1}) {
                std::int64_t target = static_cast<std::int64_t>(p) +
                                      (mode == Mode::difference ? -25 : -1) + 48 * eps;
                bool verdict[2];
                int k = 0;
                for (const PrimeContext* ctx : {&base, &other}) {
                    CycMatrix counts = count_all(*ctx, 24);
                    bool pass = true;
                    for (int s = 1; s <= 11 && pass; ++s)
                        pass = 576 * counts.at(s, t) == target;
                    verdict[k++] = pass;
                }
                CHECK(verdict[0] == verdict[1]);
            }
        }
    }
}
