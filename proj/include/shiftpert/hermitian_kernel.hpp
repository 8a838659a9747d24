#pragma once

// Tolerance-parameterized numerical primitives shared by every decision
// procedure in the library: Hermitian and general eigendecomposition,
// numerical rank, kernel bases, semidefiniteness, and column-space
// containment.  All thresholds are relative (rank to the largest singular
// value, PSD slack to max(1, ||M||)) so the strict inequalities of the
// underlying criteria become stable threshold comparisons.

#include <vector>

#include "shiftpert/operator_model.hpp"

namespace shiftpert {

struct Tolerance {
    double eps_psd = 1e-9;   // semidefiniteness slack
    double eps_rank = 1e-9;  // singular-value threshold, relative to sigma_max
    double eps_eig = 1e-8;   // eigenvalue grouping radius
};

// One numerical eigenvalue group: the grouped value and an orthonormal basis
// (columns) of its numerical eigenspace.  Each column v of `vectors`
// satisfies ||M v - value v|| <= 10 * eps_eig * ||M|| for the source M.
struct EigenPair {
    Complex value;
    Matrix vectors;
};

struct HermitianEigen {
    Eigen::VectorXd values;  // ascending
    Matrix vectors;          // unitary, column i pairs with values[i]
};

// Requires ||M - M*||_max <= 1e-10 * (1 + ||M||_max); throws otherwise.
HermitianEigen hermitian_eigen(const Matrix& m);

struct PsdResult {
    bool psd = false;
    double min_eigenvalue = 0.0;
    double scale = 1.0;      // max(1, ||M||_2)
    bool marginal = false;   // |min eigenvalue| within 10x of the slack
};

PsdResult is_psd_ex(const Matrix& m, const Tolerance& tol);
bool is_psd(const Matrix& m, const Tolerance& tol);

struct RankResult {
    Index rank = 0;
    bool marginal = false;   // some sigma/sigma_max within 10x of eps_rank
};

RankResult matrix_rank_ex(const Matrix& m, const Tolerance& tol);
Index matrix_rank(const Matrix& m, const Tolerance& tol);

// Orthonormal basis (columns) of the numerical right kernel; zero columns
// for injective input.
Matrix kernel_basis(const Matrix& m, const Tolerance& tol);

// Orthonormal basis (columns) of the numerical column space.
Matrix column_space_basis(const Matrix& m, const Tolerance& tol);

// rank([A|B]) == rank(B); requires equal row counts.
bool column_space_contained(const Matrix& a, const Matrix& b, const Tolerance& tol);

// All eigenvalues of a square M, grouped within eps_eig, each with an
// orthonormal numerical eigenspace basis.  Defective values yield their
// geometric eigenspace only.  Groups are sorted by (re, im).
std::vector<EigenPair> general_eigen(const Matrix& m, const Tolerance& tol);

// Spectral norm (largest singular value).
double operator_norm(const Matrix& m);

}  // namespace shiftpert
