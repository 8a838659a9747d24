#pragma once

// Closed-form defect data for T = S_k + F.  The defect operators
// I - T*T and I - TT* vanish outside finite windows; their non-zero blocks
// are the Gram matrices
//   G_T     = I_d     - C*C   (d x d block of I - T*T),
//   G_Tstar = I_{d+k} - CC*   ((d+k) x (d+k) block of I - TT*),
// and stagewise, with M_r the r-th stage block,
//   G_r = I_d      - M_r* M_r,
//   H_r = I_{d+rk} - M_r M_r*.
// Everything below is exact in C; no truncation is involved.

#include <optional>

#include "shiftpert/hermitian_kernel.hpp"
#include "shiftpert/operator_model.hpp"

namespace shiftpert {

struct DefectGrams {
    Matrix gram_t;      // d x d
    Matrix gram_tstar;  // (d+k) x (d+k)
};

struct StageDefectGrams {
    Index r = 0;
    Matrix gram_t;      // d x d
    Matrix gram_tstar;  // (d+rk) x (d+rk)
};

// Zero-pads a into the top-left corner of an n x n matrix.
Matrix embed_top_left(const Matrix& a, Index n);

DefectGrams defect_grams(const OperatorSpec& spec);
StageDefectGrams stage_defect_grams(const OperatorSpec& spec, Index r);

// (rank G_T, rank G_Tstar) = (dim of the defect space of T, of T*).
std::pair<Index, Index> defect_dimensions(const OperatorSpec& spec, const Tolerance& tol);

// Column space of embed(G_T) contained in column space of G_Tstar.  In finite
// dimensions the closed range of the defect operator equals the column space
// of its square, so this is the defect-space inclusion test.
bool defect_inclusion(const OperatorSpec& spec, const Tolerance& tol);

// Minimal lambda >= 0 with embed(G_T) <= lambda * G_Tstar on the column space
// of G_Tstar; nullopt exactly when the inclusion fails.  lambda <= 1 is the
// hyponormality-compatible regime.  For non-contraction input (indefinite
// grams) the value is a formal diagnostic computed through |eigenvalue|
// scaling; classification attaches the non-contraction flag.
std::optional<double> douglas_lambda(const OperatorSpec& spec, const Tolerance& tol);

}  // namespace shiftpert
