#pragma once

#include "cyc24/errors.hpp"
#include "cyc24/field_context.hpp"
#include "cyc24/jacobi_params.hpp"
#include "cyc24/numeric.hpp"
#include "cyc24/rational_linalg.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cyc24 {

// Matrix of cyclotomic numbers C_n(s,t): entry (s,t) counts the N in F_p
// with both N/g^s and (N+1)/g^t nonzero n-th power residues.
struct CycMatrix {
    int n = 0;
    std::vector<std::int64_t> counts; // row-major n x n

    std::int64_t at(int s, int t) const { return counts[static_cast<std::size_t>(s) * n + t]; }
    std::int64_t& at(int s, int t) { return counts[static_cast<std::size_t>(s) * n + t]; }

    std::int64_t total() const
    {
        std::int64_t sum = 0;
        for (auto v : counts)
            sum += v;
        return sum;
    }
};

// Single pass over N = 1..p-2; N = p-1 is excluded because N+1 = 0 there.
inline CycMatrix count_all(const PrimeContext& ctx, int n)
{
    if (n < 2 || (ctx.p - 1) % static_cast<std::uint64_t>(n) != 0)
        throw NotOneModN("count_all: order " + std::to_string(n) + " does not divide p-1");
    CycMatrix m;
    m.n = n;
    m.counts.assign(static_cast<std::size_t>(n) * n, 0);
    const std::uint32_t* ind = ctx.ind.data();
    for (std::uint64_t N = 1; N + 1 < ctx.p; ++N)
        ++m.counts[static_cast<std::size_t>(ind[N] % n) * n + ind[N + 1] % n];
    return m;
}

// One derived formula: 576*C_24(s,t) as a dot product of `coeffs` with the
// evaluation order (p, 1, X, Y, A, B, C, D, U, V, D0..D7).
struct CycCoeffRow {
    int s = 0;
    int t = 0;
    std::array<Int, 18> coeffs{};
};

struct CoeffTable {
    ClassTuple cls;
    std::vector<CycCoeffRow> rows; // exactly 576, ordered (s,t) lexicographic
    std::vector<std::uint64_t> provenance;
    std::vector<std::uint64_t> validated;

    const CycCoeffRow& row(int s, int t) const { return rows[static_cast<std::size_t>(s) * 24 + t]; }
    CycCoeffRow& row(int s, int t) { return rows[static_cast<std::size_t>(s) * 24 + t]; }
};

inline Int eval_row(const CycCoeffRow& row, std::uint64_t p, const JacobiParams& params)
{
    auto obs = params.observation(p);
    Int v = 0;
    for (int i = 0; i < 18; ++i)
        v += row.coeffs[i] * obs[i];
    return v;
}

inline Int eval_row(const CoeffTable& table, int s, int t, std::uint64_t p, const JacobiParams& params)
{
    if (params.cls() != table.cls)
        throw ClassMismatch("eval_row: parameter class " + params.cls().str() +
                            " does not match table class " + table.cls.str());
    return eval_row(table.row(s, t), p, params);
}

// Indices into the 18-slot evaluation order.
namespace obs_index {
inline constexpr int P = 0, ONE = 1, X = 2, Y = 3, A = 4, B = 5, C = 6, D = 7,
                     U = 8, V = 9, D0 = 10, D1 = 11, D2 = 12, D3 = 13, D4 = 14,
                     D5 = 15, D6 = 16, D7 = 17;
}

// Coefficients of (X, Y, A, B, C, U, D0, D2, D4, D6); requires the D, V,
// D1, D3, D5, D7 coefficients to vanish.
inline std::array<Int, 10> project_short6(const CycCoeffRow& row)
{
    using namespace obs_index;
    for (int i : {D, V, D1, D3, D5, D7})
        if (row.coeffs[i] != 0)
            throw NonZeroOmitted("project_short6: row (" + std::to_string(row.s) + "," +
                                 std::to_string(row.t) + ") has a nonzero omitted coefficient");
    return {row.coeffs[X], row.coeffs[Y], row.coeffs[A], row.coeffs[B], row.coeffs[C],
            row.coeffs[U], row.coeffs[D0], row.coeffs[D2], row.coeffs[D4], row.coeffs[D6]};
}

// Coefficients of (X, Y, A, B, C, U, D0, D4); additionally requires zero
// coefficients on D2 and D6.
inline std::array<Int, 8> project_short8(const CycCoeffRow& row)
{
    using namespace obs_index;
    auto six = project_short6(row);
    if (row.coeffs[D2] != 0 || row.coeffs[D6] != 0)
        throw NonZeroOmitted("project_short8: row (" + std::to_string(row.s) + "," +
                             std::to_string(row.t) + ") has a nonzero D2 or D6 coefficient");
    return {six[0], six[1], six[2], six[3], six[4], six[5], six[6], row.coeffs[D4]};
}

// Everything derivation and analysis need to know about one prime.
struct PrimeData {
    std::uint64_t p = 0;
    std::uint64_t g = 0;
    std::uint64_t f = 0;
    JacobiParams params;
    CycMatrix counts; // order 24
};

namespace detail {

// Incremental row-space tracker over Q; keeps the indices of rows that
// extended the rank.
class RowBasis {
public:
    explicit RowBasis(int cols) : cols_(cols) {}

    bool try_add(const std::array<Int, 18>& row, int original_index)
    {
        RatVector v(cols_);
        for (int i = 0; i < cols_; ++i)
            v[i] = Rat(row[i]);
        for (std::size_t k = 0; k < echelon_.size(); ++k) {
            int lead = lead_[k];
            if (v[lead] == 0)
                continue;
            Rat factor = v[lead];
            for (int i = 0; i < cols_; ++i)
                v[i] -= factor * echelon_[k][i];
        }
        int lead = -1;
        for (int i = 0; i < cols_; ++i) {
            if (v[i] != 0) {
                lead = i;
                break;
            }
        }
        if (lead < 0)
            return false;
        Rat inv = Rat(1) / v[lead];
        for (int i = 0; i < cols_; ++i)
            v[i] *= inv;
        echelon_.push_back(std::move(v));
        lead_.push_back(lead);
        members_.push_back(original_index);
        return true;
    }

    int rank() const { return static_cast<int>(echelon_.size()); }
    const std::vector<int>& members() const { return members_; }

private:
    int cols_;
    std::vector<RatVector> echelon_;
    std::vector<int> lead_;
    std::vector<int> members_;
};

// Exact inverse of a square rational matrix as (N, L) with S^-1 = N / L and
// N integral; throws if S is singular.
inline std::pair<std::vector<std::vector<Int>>, Int> integral_inverse(const RatMatrix& S)
{
    const int n = static_cast<int>(S.size());
    RatMatrix aug(S);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            aug[i].push_back(i == j ? Rat(1) : Rat(0));
    }
    RRefResult rr = rref(std::move(aug));
    if (static_cast<int>(rr.pivots.size()) != n || rr.pivots.back() != n - 1)
        throw internal_error("integral_inverse: singular matrix");

    Int lcm = 1;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Int den = boost::multiprecision::denominator(rr.R[i][n + j]);
            lcm = boost::multiprecision::lcm(lcm, den);
        }
    }
    std::vector<std::vector<Int>> N(n, std::vector<Int>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Rat& q = rr.R[i][n + j];
            N[i][j] = boost::multiprecision::numerator(q) *
                      (lcm / boost::multiprecision::denominator(q));
        }
    }
    return {std::move(N), lcm};
}

} // namespace detail

// Derives the 576-row coefficient table of a class by exact fitting: the
// first primes whose observation vectors reach full column rank 18 form the
// provenance set; every remaining prime is held out and cross-validated.
// The solution of observation * coeffs = 576 * counts is unique once the
// rank is 18, and must be integral.
inline CoeffTable derive_table(const ClassTuple& cls, std::span<const PrimeData> primes)
{
    constexpr int kCols = 18;
    constexpr int kMinValidation = 5;

    for (const auto& pd : primes)
        if (pd.params.cls() != cls)
            throw ClassMismatch("derive_table: prime " + std::to_string(pd.p) + " is in class " +
                                pd.params.cls().str() + ", not " + cls.str());

    detail::RowBasis basis(kCols);
    int provenance_end = -1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        basis.try_add(primes[i].params.observation(primes[i].p), static_cast<int>(i));
        if (basis.rank() == kCols) {
            provenance_end = static_cast<int>(i) + 1;
            break;
        }
    }
    if (provenance_end < 0)
        throw RankDeficient(basis.rank(),
                            "derive_table: observation matrix for class " + cls.str() + " has rank " +
                                std::to_string(basis.rank()) + " from " + std::to_string(primes.size()) +
                                " primes; need rank 18");
    const int n_validation = static_cast<int>(primes.size()) - provenance_end;
    if (n_validation < kMinValidation)
        throw RankDeficient(kCols, "derive_table: class " + cls.str() + " leaves only " +
                                       std::to_string(n_validation) +
                                       " held-out primes; need at least " + std::to_string(kMinValidation));

    RatMatrix S(kCols, RatVector(kCols));
    for (int r = 0; r < kCols; ++r) {
        auto obs = primes[basis.members()[r]].params.observation(primes[basis.members()[r]].p);
        for (int c = 0; c < kCols; ++c)
            S[r][c] = Rat(obs[c]);
    }
    auto [Ninv, L] = detail::integral_inverse(S);

    CoeffTable table;
    table.cls = cls;
    table.rows.resize(576);
    for (int i = 0; i < provenance_end; ++i)
        table.provenance.push_back(primes[i].p);
    for (std::size_t i = provenance_end; i < primes.size(); ++i)
        table.validated.push_back(primes[i].p);

    std::vector<std::array<Int, 18>> observations(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i)
        observations[i] = primes[i].params.observation(primes[i].p);

    for (int s = 0; s < 24; ++s) {
        for (int t = 0; t < 24; ++t) {
            CycCoeffRow& row = table.row(s, t);
            row.s = s;
            row.t = t;
            for (int i = 0; i < kCols; ++i) {
                Int numer = 0;
                for (int j = 0; j < kCols; ++j)
                    numer += Ninv[i][j] * (Int(576) * primes[basis.members()[j]].counts.at(s, t));
                if (numer % L != 0)
                    throw NonIntegralCoefficient("derive_table: class " + cls.str() + " row (" +
                                                 std::to_string(s) + "," + std::to_string(t) +
                                                 ") has a non-integral coefficient");
                row.coeffs[i] = numer / L;
            }
            // Exact recheck on every provenance and held-out prime.
            for (std::size_t i = 0; i < primes.size(); ++i) {
                Int v = 0;
                for (int c = 0; c < kCols; ++c)
                    v += row.coeffs[c] * observations[i][c];
                if (v != Int(576) * primes[i].counts.at(s, t))
                    throw ValidationFailure("derive_table: class " + cls.str() + " row (" +
                                            std::to_string(s) + "," + std::to_string(t) +
                                            ") fails at p=" + std::to_string(primes[i].p));
            }
        }
    }
    return table;
}

} // namespace cyc24
