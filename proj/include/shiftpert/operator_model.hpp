#pragma once

// Finite representation of operators T = S_k + F: a unilateral shift of
// multiplicity k plus a perturbation supported on the first d basis columns.
// All indices are 0-based; the basis is written e_0, e_1, ...
//
// The whole operator is determined by the (d+k) x d coefficient block C:
//   T e_j = sum_i C(i,j) e_i   for j <  d,
//   T e_j = e_{j+k}            for j >= d.

#include <complex>
#include <Eigen/Dense>

namespace shiftpert {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

struct OperatorSpec {
    Index d = 0;   // number of perturbed columns
    Index k = 0;   // shift multiplicity
    Matrix coeff;  // (d+k) x d, column j = coordinates of T e_j
};

// Coordinate block of T^r on the perturbed columns: column j = T^r e_j,
// supported on e_0..e_{d+rk-1}.  Stage 1 equals the coefficient block.
struct StageBlock {
    Index r = 0;
    Matrix m;  // (d + r*k) x d
};

// Validates shape and finiteness; stores C as-is (no normalization).
OperatorSpec build_operator(Index d, Index k, const Matrix& coeff);

// T x for a finitely supported x (length L >= 1); result length max(d+k, L+k).
Vector apply(const OperatorSpec& spec, const Vector& x);

// T* x; result length max(L-k, d).
Vector apply_adjoint(const OperatorSpec& spec, const Vector& x);

// Computed by iterated application on basis columns, never by dense powers,
// so the support bound d+rk is exact.
StageBlock stage_block(const OperatorSpec& spec, Index r);

// Top-left N x N corner of [T] (N >= d+k so the perturbation block fits).
// Shift columns whose image falls outside the window are zero.
Matrix truncate(const OperatorSpec& spec, Index N);

// d = 1 operator with T e_0 = alpha_0 e_0 + ... + alpha_k e_k.  The
// contraction constraint sum |alpha_i|^2 < 1 is not enforced here;
// classification reports it.
OperatorSpec rank_one_operator(Index k, const Vector& alpha);

}  // namespace shiftpert
