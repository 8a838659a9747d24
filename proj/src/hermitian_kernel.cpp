#include "shiftpert/hermitian_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace shiftpert {

namespace {

double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_hermitian(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("expected a square Hermitian matrix");
    }
    const double dev = max_abs(m - m.adjoint());
    if (dev > 1e-10 * (1.0 + max_abs(m))) {
        throw std::invalid_argument("matrix is not Hermitian within tolerance");
    }
}

Eigen::JacobiSVD<Matrix> svd_of(const Matrix& m, unsigned options = 0) {
    return Eigen::JacobiSVD<Matrix>(m, options);
}

}  // namespace

double operator_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return svd_of(m).singularValues()(0);
}

HermitianEigen hermitian_eigen(const Matrix& m) {
    require_hermitian(m);
    const Matrix sym = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eigen: eigensolver failed to converge");
    }
    return HermitianEigen{es.eigenvalues(), es.eigenvectors()};
}

PsdResult is_psd_ex(const Matrix& m, const Tolerance& tol) {
    const HermitianEigen eig = hermitian_eigen(m);
    PsdResult r;
    r.min_eigenvalue = eig.values.size() ? eig.values.minCoeff() : 0.0;
    const double norm = eig.values.size() ? eig.values.cwiseAbs().maxCoeff() : 0.0;
    r.scale = std::max(1.0, norm);
    r.psd = r.min_eigenvalue >= -tol.eps_psd * r.scale;
    r.marginal = std::abs(r.min_eigenvalue) <= 10.0 * tol.eps_psd * r.scale;
    return r;
}

bool is_psd(const Matrix& m, const Tolerance& tol) { return is_psd_ex(m, tol).psd; }

RankResult matrix_rank_ex(const Matrix& m, const Tolerance& tol) {
    RankResult r;
    if (m.size() == 0) return r;
    const Eigen::VectorXd sv = svd_of(m).singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    if (smax <= 0.0) return r;  // zero matrix
    for (Index i = 0; i < sv.size(); ++i) {
        const double ratio = sv(i) / smax;
        if (ratio > tol.eps_rank) ++r.rank;
        if (ratio >= tol.eps_rank / 10.0 && ratio <= tol.eps_rank * 10.0) r.marginal = true;
    }
    return r;
}

Index matrix_rank(const Matrix& m, const Tolerance& tol) { return matrix_rank_ex(m, tol).rank; }

Matrix kernel_basis(const Matrix& m, const Tolerance& tol) {
    const Index cols = m.cols();
    if (m.rows() == 0 || cols == 0) return Matrix::Identity(cols, cols);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i) {
        if (smax > 0.0 && sv(i) > tol.eps_rank * smax) ++rank;
    }
    return svd.matrixV().rightCols(cols - rank);
}

Matrix column_space_basis(const Matrix& m, const Tolerance& tol) {
    if (m.rows() == 0 || m.cols() == 0) return Matrix(m.rows(), 0);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
    const Eigen::VectorXd sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i) {
        if (smax > 0.0 && sv(i) > tol.eps_rank * smax) ++rank;
    }
    return svd.matrixU().leftCols(rank);
}

bool column_space_contained(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    if (a.rows() != b.rows()) {
        throw std::invalid_argument("column_space_contained: row counts differ");
    }
    Matrix joined(a.rows(), a.cols() + b.cols());
    joined << a, b;
    return matrix_rank(joined, tol) == matrix_rank(b, tol);
}

namespace {

// Orthonormalize the columns of m (thin QR), dropping numerically null ones.
Matrix orthonormalize(const Matrix& m, double drop_tol) {
    if (m.cols() == 0) return m;
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
    const Eigen::VectorXd sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    Index keep = 0;
    for (Index i = 0; i < sv.size(); ++i) {
        if (smax > 0.0 && sv(i) > drop_tol * smax) ++keep;
    }
    return svd.matrixU().leftCols(keep);
}

}  // namespace

std::vector<EigenPair> general_eigen(const Matrix& m, const Tolerance& tol) {
    if (m.rows() != m.cols()) throw std::invalid_argument("general_eigen: matrix must be square");
    const Index n = m.rows();
    if (n == 0) return {};

    Eigen::ComplexEigenSolver<Matrix> es(m, /*computeEigenvectors=*/true);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("general_eigen: eigensolver failed to converge");
    }
    const Vector values = es.eigenvalues();
    const Matrix raw_vectors = es.eigenvectors();

    // Union-find grouping within eps_eig (transitive closure over pairs).
    std::vector<Index> parent(n);
    std::iota(parent.begin(), parent.end(), Index{0});
    auto find = [&](Index i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            if (std::abs(values[i] - values[j]) <= tol.eps_eig) {
                parent[find(i)] = find(j);
            }
        }
    }
    std::vector<std::vector<Index>> groups;
    {
        std::vector<Index> root_to_group(n, -1);
        for (Index i = 0; i < n; ++i) {
            const Index r = find(i);
            if (root_to_group[r] < 0) {
                root_to_group[r] = static_cast<Index>(groups.size());
                groups.emplace_back();
            }
            groups[root_to_group[r]].push_back(i);
        }
    }

    const double norm = operator_norm(m);
    const double kernel_cut = tol.eps_eig * std::max(1.0, norm);

    std::vector<EigenPair> out;
    out.reserve(groups.size());
    for (const auto& g : groups) {
        Complex mean(0, 0);
        for (Index i : g) mean += values[i];
        mean /= static_cast<double>(g.size());

        // Numerical eigenspace: near-kernel of M - mean*I at the grouping
        // scale.  Falls back to the solver's vectors when the shifted matrix
        // has no singular value that small (strongly non-normal cases).
        const Matrix shifted = m - mean * Matrix::Identity(n, n);
        Eigen::JacobiSVD<Matrix> svd(shifted, Eigen::ComputeFullV);
        const Eigen::VectorXd sv = svd.singularValues();
        Index null_dim = 0;
        for (Index i = sv.size(); i-- > 0;) {
            if (sv(i) <= kernel_cut) ++null_dim;
            else break;
        }
        Matrix space;
        if (null_dim > 0) {
            space = svd.matrixV().rightCols(null_dim);
        } else {
            Matrix cols(n, static_cast<Index>(g.size()));
            for (std::size_t c = 0; c < g.size(); ++c) cols.col(static_cast<Index>(c)) = raw_vectors.col(g[c]);
            space = orthonormalize(cols, 1e-12);
        }
        out.push_back(EigenPair{mean, std::move(space)});
    }

    std::sort(out.begin(), out.end(), [](const EigenPair& a, const EigenPair& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

}  // namespace shiftpert
