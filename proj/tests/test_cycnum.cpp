#include "cyc24/cyclotomic_numbers.hpp"
#include "cyc24/harvest.hpp"
#include "cyc24/serialize.hpp"
#include "test_support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace cyc24;

namespace {

CycCoeffRow anchor_row_2_12()
{
    // 576*C(6,0) = p - 23 + 4X - 14A + 24B - 8C - 8U + 32*D0 + 16*D4
    CycCoeffRow row;
    row.s = 6;
    row.t = 0;
    std::array<long long, 18> c = {1, -23, 4, 0, -14, 24, -8, 0, -8, 0, 32, 0, 0, 0, 16, 0, 0, 0};
    for (int i = 0; i < 18; ++i)
        row.coeffs[i] = c[i];
    return row;
}

} // namespace

TEST_CASE("count_all small cases")
{
    PrimeContext c7 = build_context(7, 2, 3);
    CycMatrix m7 = count_all(c7, 2);
    CHECK(m7.at(1, 0) == 1);
    CHECK(m7.total() == 5);

    PrimeContext c5 = build_context(5, 2, 2);
    CycMatrix m5 = count_all(c5, 2);
    CHECK(m5.at(1, 1) == 1);
    CHECK(m5.total() == 3);

    for (std::uint64_t p : {73ull, 97ull, 409ull}) {
        PrimeContext ctx = build_context(p, 24, find_primitive_root(p));
        for (int n : {2, 3, 24})
            CHECK(count_all(ctx, n).total() == static_cast<std::int64_t>(p - 2));
    }
    CHECK_THROWS_AS(count_all(c7, 5), NotOneModN);
}

TEST_CASE("eval_row basics")
{
    JacobiParams params = extract_params(normalize_generator(73));
    CycCoeffRow zero;
    CHECK(eval_row(zero, 73, params) == 0);
    CycCoeffRow just_p;
    just_p.coeffs[0] = 1;
    CHECK(eval_row(just_p, 73, params) == 73);
}

TEST_CASE("short projections of the published example row")
{
    CycCoeffRow row = anchor_row_2_12();
    auto s6 = project_short6(row);
    CHECK(s6 == std::array<Int, 10>{4, 0, -14, 24, -8, -8, 32, 0, 16, 0});
    auto s8 = project_short8(row);
    CHECK(s8 == std::array<Int, 8>{4, 0, -14, 24, -8, -8, 32, 16});

    CycCoeffRow all_zero;
    CHECK(project_short6(all_zero) == std::array<Int, 10>{});
    CHECK(project_short8(all_zero) == std::array<Int, 8>{});

    CycCoeffRow bad = row;
    bad.coeffs[obs_index::D] = 1;
    CHECK_THROWS_AS(project_short6(bad), NonZeroOmitted);
    CycCoeffRow bad2 = row;
    bad2.coeffs[obs_index::D2] = 2;
    CHECK_THROWS_AS(project_short8(bad2), NonZeroOmitted);
    CHECK_NOTHROW(project_short6(bad2));
}

TEST_CASE("derive_table refuses rank-deficient input")
{
    const auto& world = test::small_world();
    auto primes = world.harvest.class_primes(world.cls_odd);
    REQUIRE(primes.size() >= 23);
    std::vector<PrimeData> ten(primes.begin(), primes.begin() + 10);
    CHECK_THROWS_AS(derive_table(world.cls_odd, ten), RankDeficient);

    std::vector<PrimeData> wrong(primes.begin(), primes.begin() + 1);
    CHECK_THROWS_AS(derive_table(world.cls_even, wrong), ClassMismatch);
}

TEST_CASE("derived tables validate exactly on every harvested prime")
{
    const auto& world = test::small_world();
    for (const CoeffTable* table : {&world.table_odd, &world.table_even}) {
        CHECK(table->rows.size() == 576);
        CHECK(table->provenance.size() >= 18);
        CHECK(table->validated.size() >= 5);
        auto primes = world.harvest.class_primes(table->cls);
        for (const auto& pd : primes) {
            for (int s = 0; s < 24; ++s)
                for (int t = 0; t < 24; ++t)
                    REQUIRE(eval_row(table->row(s, t), pd.p, pd.params) ==
                            Int(576) * pd.counts.at(s, t));
        }
    }
}

TEST_CASE("difference-side rows have p-coefficient 1 and constant -23")
{
    const auto& world = test::small_world();
    for (int s = 1; s <= 11; ++s) {
        const CycCoeffRow& row = world.table_odd.row(s, 0);
        CHECK(row.coeffs[obs_index::P] == 1);
        CHECK(row.coeffs[obs_index::ONE] == -23);
        CHECK_NOTHROW(project_short6(row));
    }
    for (int s = 1; s <= 11; ++s) {
        const CycCoeffRow& row = world.table_even.row(s, 12);
        CHECK(row.coeffs[obs_index::P] == 1);
        CHECK(row.coeffs[obs_index::ONE] == 1);
        CHECK_NOTHROW(project_short6(row));
    }
}

TEST_CASE("eval through the table checks the class")
{
    const auto& world = test::small_world();
    auto odd = world.harvest.class_primes(world.cls_odd);
    auto even = world.harvest.class_primes(world.cls_even);
    CHECK(eval_row(world.table_odd, 0, 0, odd[0].p, odd[0].params) ==
          Int(576) * odd[0].counts.at(0, 0));
    CHECK_THROWS_AS(eval_row(world.table_odd, 0, 0, even[0].p, even[0].params), ClassMismatch);
}

TEST_CASE("table JSON round-trip")
{
    const auto& world = test::small_world();
    Json j = table_to_json(world.table_even);
    CoeffTable back = table_from_json(j);
    CHECK(back.cls == world.table_even.cls);
    CHECK(back.provenance == world.table_even.provenance);
    CHECK(back.validated == world.table_even.validated);
    bool rows_equal = true;
    for (int i = 0; i < 576; ++i)
        rows_equal = rows_equal && back.rows[i].coeffs == world.table_even.rows[i].coeffs;
    CHECK(rows_equal);
    CHECK(table_to_json(back) == j);

    Json broken = j;
    broken["rows"].erase(0);
    CHECK_THROWS_AS(table_from_json(broken), input_error);
}

TEST_CASE("table CSV flattening")
{
    const auto& world = test::small_world();
    std::ostringstream os;
    table_to_csv(world.table_even, os);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header == "s,t,p,1,X,Y,A,B,C,D,U,V,D0,D1,D2,D3,D4,D5,D6,D7");
    int lines = 0;
    std::string line;
    while (std::getline(is, line))
        ++lines;
    CHECK(lines == 576);
}

TEST_CASE("cross-generator validation within a class")
{
    // Two admissible generators of the same prime give different signed
    // parameters but the same class, and both must satisfy the class table.
    const auto& world = test::small_world();
    auto primes = world.harvest.class_primes(world.cls_even);
    const PrimeData& pd = primes[0];

    PrimeContext base = build_context(pd.p, 24, find_primitive_root(pd.p));
    std::vector<std::uint64_t> admissible;
    for (std::uint64_t c = 2; c < pd.p && admissible.size() < 2; ++c) {
        if (std::gcd<std::uint64_t>(base.ind[c], pd.p - 1) != 1)
            continue;
        PrimeContext ctx = build_context(pd.p, 24, c);
        std::uint64_t z = ctx.ind[2] % 12, t = ctx.ind[3] % 8;
        if ((z == 0 || z == 2 || z == 4 || z == 6) && (t == 0 || t == 2 || t == 4))
            admissible.push_back(c);
    }
    REQUIRE(admissible.size() == 2);

    int checked = 0;
    for (std::uint64_t g : admissible) {
        PrimeContext ctx = build_context(pd.p, 24, g);
        JacobiParams params = extract_params(ctx);
        if (params.cls() != world.cls_even)
            continue; // admissible generators may land in another class
        CycMatrix counts = count_all(ctx, 24);
        for (int s = 0; s < 24; ++s)
            for (int t = 0; t < 24; ++t)
                REQUIRE(eval_row(world.table_even.row(s, t), pd.p, params) ==
                        Int(576) * counts.at(s, t));
        ++checked;
    }
    CHECK(checked >= 1);
}
