#pragma once

#include "cyc24/errors.hpp"
#include "cyc24/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cyc24 {

// Dense exact-rational matrices. Everything here is pure and exact; the
// nonexistence proofs hinge on telling integers from near-integers, so no
// floating point is allowed anywhere in this module.
using RatVector = std::vector<Rat>;
using RatMatrix = std::vector<RatVector>;

struct RRefResult {
    RatMatrix R;
    std::vector<int> pivots; // pivot column per pivot row, in order
};

inline RRefResult rref(RatMatrix M)
{
    RRefResult out;
    const int rows = static_cast<int>(M.size());
    const int cols = rows ? static_cast<int>(M[0].size()) : 0;
    for (const auto& row : M)
        if (static_cast<int>(row.size()) != cols)
            throw DimensionMismatch("rref: ragged matrix");

    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
        int piv = -1;
        for (int i = r; i < rows; ++i) {
            if (M[i][col] != 0) {
                piv = i;
                break;
            }
        }
        if (piv < 0)
            continue;
        std::swap(M[r], M[piv]);
        Rat inv = Rat(1) / M[r][col];
        for (int j = col; j < cols; ++j)
            M[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || M[i][col] == 0)
                continue;
            Rat factor = M[i][col];
            for (int j = col; j < cols; ++j)
                M[i][j] -= factor * M[r][j];
        }
        out.pivots.push_back(col);
        ++r;
    }
    out.R = std::move(M);
    return out;
}

inline int rank(const RatMatrix& M)
{
    return static_cast<int>(rref(M).pivots.size());
}

// Full solution set of M*y = h as particular + span(basis). The free
// parameters are exactly the non-pivot variables of the reduced echelon form.
struct AffineSolution {
    std::vector<std::string> variables;
    RatVector particular;
    std::vector<RatVector> basis; // basis[k][i] = coefficient of variable i in null vector k
    int dim() const { return static_cast<int>(basis.size()); }
};

// One coordinate of an affine solution as constant + coefficients on the
// free parameters a_1..a_d.
struct AffineForm {
    Rat constant;
    RatVector coeffs;

    bool is_constant() const
    {
        for (const auto& c : coeffs)
            if (c != 0)
                return false;
        return true;
    }

    Rat evaluate(const RatVector& params) const
    {
        Rat v = constant;
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            v += coeffs[k] * params[k];
        return v;
    }
};

// nullopt means the system is inconsistent (rank(M) < rank([M|h])).
inline std::optional<AffineSolution> solve_affine(const RatMatrix& M, const RatVector& h,
                                                  const std::vector<std::string>& names)
{
    const int rows = static_cast<int>(M.size());
    const int cols = rows ? static_cast<int>(M[0].size()) : 0;
    if (static_cast<int>(h.size()) != rows)
        throw DimensionMismatch("solve_affine: rhs length != row count");
    if (static_cast<int>(names.size()) != cols)
        throw DimensionMismatch("solve_affine: name count != column count");

    RatMatrix aug(M);
    for (int i = 0; i < rows; ++i)
        aug[i].push_back(h[i]);
    RRefResult rr = rref(std::move(aug));

    for (int c : rr.pivots)
        if (c == cols)
            return std::nullopt; // pivot in the augmented column

    std::vector<int> pivot_of_col(cols, -1);
    for (std::size_t r = 0; r < rr.pivots.size(); ++r)
        pivot_of_col[rr.pivots[r]] = static_cast<int>(r);

    AffineSolution sol;
    sol.variables = names;
    sol.particular.assign(cols, Rat(0));
    for (int col = 0; col < cols; ++col) {
        int r = pivot_of_col[col];
        if (r >= 0)
            sol.particular[col] = rr.R[r][cols];
    }
    for (int col = 0; col < cols; ++col) {
        if (pivot_of_col[col] >= 0)
            continue;
        RatVector v(cols, Rat(0));
        v[col] = 1;
        for (int pc = 0; pc < cols; ++pc) {
            int r = pivot_of_col[pc];
            if (r >= 0)
                v[pc] = -rr.R[r][col];
        }
        sol.basis.push_back(std::move(v));
    }
    return sol;
}

inline int variable_index(const AffineSolution& sol, const std::string& var)
{
    for (std::size_t i = 0; i < sol.variables.size(); ++i)
        if (sol.variables[i] == var)
            return static_cast<int>(i);
    throw UnknownVariable("coord_affine: no variable named " + var);
}

inline AffineForm coord_affine(const AffineSolution& sol, const std::string& var)
{
    int i = variable_index(sol, var);
    AffineForm form;
    form.constant = sol.particular[i];
    form.coeffs.reserve(sol.basis.size());
    for (const auto& v : sol.basis)
        form.coeffs.push_back(v[i]);
    return form;
}

// Value of every variable at a given free-parameter assignment.
inline RatVector evaluate_solution(const AffineSolution& sol, const RatVector& params)
{
    if (static_cast<int>(params.size()) != sol.dim())
        throw DimensionMismatch("evaluate_solution: wrong parameter count");
    RatVector vals = sol.particular;
    for (std::size_t k = 0; k < sol.basis.size(); ++k)
        for (std::size_t i = 0; i < vals.size(); ++i)
            vals[i] += params[k] * sol.basis[k][i];
    return vals;
}

} // namespace cyc24
