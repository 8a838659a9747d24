#include "shiftpert/oracle.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/SVD>

#include "shiftpert/hermitian_kernel.hpp"

namespace shiftpert {

namespace {

Index auto_size(const OperatorSpec& spec, Index r) {
    return spec.d + (r + 2) * spec.k + 8;
}

double block_discrepancy(const Matrix& a, const Matrix& b, Index n) {
    return (a.block(0, 0, n, n) - b.block(0, 0, n, n)).cwiseAbs().maxCoeff();
}

}  // namespace

CheckResult dense_defect_check(const OperatorSpec& spec, const OracleConfig& config) {
    const Index n = config.n > 0 ? config.n : auto_size(spec, 1);
    if (n < spec.d + 2 * spec.k + 4) {
        throw std::invalid_argument("dense_defect_check: N must be >= d + 2k + 4");
    }
    const Matrix t = truncate(spec, n);
    const Matrix id = Matrix::Identity(n, n);
    const DefectGrams g = defect_grams(spec);

    const Index interior = n - spec.k;
    CheckResult result;
    result.n_used = n;
    result.max_discrepancy = std::max(
        block_discrepancy(id - t.adjoint() * t, embed_top_left(g.gram_t, n), interior),
        block_discrepancy(id - t * t.adjoint(), embed_top_left(g.gram_tstar, n), interior));
    result.pass = result.max_discrepancy <= config.tol_match;
    return result;
}

CheckResult power_decomposition_check(const OperatorSpec& spec, Index r,
                                      const OracleConfig& config) {
    if (r < 1) throw std::invalid_argument("power_decomposition_check: r must be >= 1");
    const Index n = config.n > 0 ? config.n : auto_size(spec, r);
    if (n < spec.d + (r + 1) * spec.k + 4) {
        throw std::invalid_argument("power_decomposition_check: N must be >= d + (r+1)k + 4");
    }
    const Matrix t = truncate(spec, n);
    Matrix dense = Matrix::Identity(n, n);
    for (Index s = 0; s < r; ++s) dense = t * dense;

    const StageBlock stage = stage_block(spec, r);
    Matrix expected = Matrix::Zero(n, n);
    expected.block(0, 0, stage.m.rows(), spec.d) = stage.m;
    for (Index j = spec.d; j < n; ++j) {
        if (j + r * spec.k < n) expected(j + r * spec.k, j) = Complex(1.0, 0.0);
    }

    const Index interior = n - r * spec.k;
    CheckResult result;
    result.n_used = n;
    result.max_discrepancy = block_discrepancy(dense, expected, interior);
    result.pass = result.max_discrepancy <= config.tol_match;
    return result;
}

KernelConditionReport kernel_condition_check(const OperatorSpec& spec, Index r,
                                             const Tolerance& tol) {
    if (r < 1) throw std::invalid_argument("kernel_condition_check: r must be >= 1");
    if (!is_psd(defect_grams(spec).gram_t, tol)) {
        throw std::invalid_argument("kernel_condition_check: operator is not a contraction");
    }
    const StageDefectGrams stage = stage_defect_grams(spec, r);
    const Index window = spec.d + r * spec.k;

    KernelConditionReport report;
    report.r = r;
    report.psd_gram_t = is_psd(stage.gram_t, tol);
    report.psd_gram_tstar = is_psd(stage.gram_tstar, tol);

    // Joint equality solutions within the stage window: G_r kills the head
    // and H_r kills the whole window (PSD grams, so quadratic-form equality
    // is kernel membership).
    Matrix constraints = Matrix::Zero(spec.d + window, window);
    constraints.block(0, 0, spec.d, spec.d) = stage.gram_t;
    constraints.block(spec.d, 0, window, window) = stage.gram_tstar;
    report.joint_kernel_dim = kernel_basis(constraints, tol).cols();

    report.pass = report.psd_gram_t && report.psd_gram_tstar;
    return report;
}

std::vector<AnalyticProbeStage> analytic_probe(const OperatorSpec& spec, Index m_max,
                                               const OracleConfig& config,
                                               const Tolerance& tol) {
    if (m_max < 1) throw std::invalid_argument("analytic_probe: m_max must be >= 1");
    const Index n = config.n > 0 ? config.n : auto_size(spec, m_max);
    if (n < spec.d + (m_max + 1) * spec.k + 4) {
        throw std::invalid_argument("analytic_probe: N too small for m_max");
    }
    const Matrix t = truncate(spec, n);
    const Index window = spec.d + spec.k;

    std::vector<AnalyticProbeStage> stages;
    Matrix power = Matrix::Identity(n, n);
    for (Index m = 1; m <= m_max; ++m) {
        power = t * power;
        // Interior columns only: shift columns past n - mk are truncation junk.
        const Index cols = n - m * spec.k;
        const Matrix basis = column_space_basis(power.leftCols(cols), tol);

        AnalyticProbeStage stage;
        stage.m = m;
        if (basis.cols() > 0) {
            // rows of the orthonormal range basis inside the window; singular
            // values are the principal-angle cosines
            const Matrix overlap = basis.topRows(window);
            Eigen::JacobiSVD<Matrix> svd(overlap, Eigen::ComputeFullU);
            const Eigen::VectorXd sv = svd.singularValues();
            stage.max_overlap = sv.size() ? sv(0) : 0.0;
            for (Index i = 0; i < sv.size(); ++i) {
                if (sv(i) > 1e-6) ++stage.window_rank;
            }
            stage.direction = svd.matrixU().col(0);
        } else {
            stage.direction = Vector::Zero(window);
        }
        stages.push_back(std::move(stage));
    }
    return stages;
}

Matrix gaussian_matrix(Index rows, Index cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto uniform01 = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    auto gaussian_pair = [&]() {
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        return Complex(radius * std::cos(2.0 * M_PI * u2),
                       radius * std::sin(2.0 * M_PI * u2));
    };
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) m(i, j) = gaussian_pair();
    }
    return m;
}

OperatorSpec random_contraction(Index d, Index k, std::uint64_t seed, double margin) {
    if (d < 1 || k < 1) throw std::invalid_argument("random_contraction: d, k must be >= 1");
    if (!(margin > 0.0 && margin < 1.0)) {
        throw std::invalid_argument("random_contraction: margin must lie in (0,1)");
    }
    Matrix coeff = gaussian_matrix(d + k, d, seed);
    const double smax = operator_norm(coeff);
    if (smax > 0.0) coeff *= (1.0 - margin) / smax;
    return build_operator(d, k, coeff);
}

}  // namespace shiftpert
