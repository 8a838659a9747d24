#include "shiftpert/classification.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

namespace shiftpert {

namespace {

// Right kernel with an absolute singular-value cutoff.
Matrix kernel_below(const Matrix& m, double cut) {
    const Index cols = m.cols();
    if (m.rows() == 0 || cols == 0) return Matrix::Identity(cols, cols);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cut) ++rank;
    }
    return svd.matrixV().rightCols(cols - rank);
}

Vector padded(const Vector& v, Index n) {
    Vector out = Vector::Zero(n);
    out.head(std::min(v.size(), n)) = v.head(std::min(v.size(), n));
    return out;
}

bool unimodular_witness_ok(const OperatorSpec& spec, const Vector& v) {
    const double n = v.norm();
    if (!(n > 0.0)) return false;
    const double tn = shiftpert::apply(spec, v).norm();
    const double an = apply_adjoint(spec, v).norm();
    return std::abs(tn - n) <= 1e-8 * std::max(1.0, n) &&
           std::abs(an - n) <= 1e-8 * std::max(1.0, n);
}

// Cumulative joint equality-space dimensions of the stage defect conditions,
// restricted to the window of the deepest stage.  Diagnostic attached to
// Inconclusive cnu verdicts.
std::vector<Index> joint_kernel_dims(const OperatorSpec& spec, const Tolerance& tol,
                                     Index r_cap) {
    const Index w_max = spec.d + r_cap * spec.k;
    Matrix basis = Matrix::Identity(w_max, w_max);
    std::vector<Index> dims;
    for (Index r = 1; r <= r_cap; ++r) {
        const StageDefectGrams stage = stage_defect_grams(spec, r);
        const Index w_r = spec.d + r * spec.k;
        Matrix constraints = Matrix::Zero(spec.d + w_r, w_max);
        constraints.block(0, 0, spec.d, spec.d) = stage.gram_t;
        constraints.block(spec.d, 0, w_r, w_r) = stage.gram_tstar;
        if (basis.cols() > 0) {
            basis = basis * kernel_basis(constraints * basis, tol);
        }
        dims.push_back(basis.cols());
    }
    return dims;
}

}  // namespace

bool is_contraction(const OperatorSpec& spec, const Tolerance& tol) {
    return is_psd(defect_grams(spec).gram_t, tol);
}

bool is_hyponormal(const OperatorSpec& spec, const Tolerance& tol) {
    const DefectGrams g = defect_grams(spec);
    return is_psd(g.gram_tstar - embed_top_left(g.gram_t, spec.d + spec.k), tol);
}

EigenCriterionBlocks eigen_blocks(const OperatorSpec& spec) {
    return EigenCriterionBlocks{spec.coeff.topRows(spec.d), spec.coeff.bottomRows(spec.k)};
}

std::vector<EigenPair> nonzero_point_spectrum(const OperatorSpec& spec, const Tolerance& tol) {
    const EigenCriterionBlocks blocks = eigen_blocks(spec);
    const double zero_cut = tol.eps_eig * std::max(1.0, operator_norm(blocks.a1));

    std::vector<EigenPair> out;
    for (const EigenPair& ep : general_eigen(blocks.a1, tol)) {
        if (std::abs(ep.value) <= zero_cut) continue;
        Matrix stacked(spec.d + spec.k, spec.d);
        stacked.topRows(spec.d) =
            blocks.a1 - ep.value * Matrix::Identity(spec.d, spec.d);
        stacked.bottomRows(spec.k) = blocks.b;
        // Cutoff at the eigenvalue-grouping scale, so grouped multiple
        // eigenvalues keep their full joint eigenspace.
        const double smax = operator_norm(stacked);
        const double cut = std::max(tol.eps_rank * smax, tol.eps_eig * std::max(1.0, smax));
        const Matrix kernel = kernel_below(stacked, cut);
        if (kernel.cols() > 0) out.push_back(EigenPair{ep.value, kernel});
    }
    return out;
}

Verdict is_analytic(const OperatorSpec& spec, const Tolerance& tol) {
    if (!nonzero_point_spectrum(spec, tol).empty()) return Verdict::False;
    const EigenCriterionBlocks blocks = eigen_blocks(spec);
    const Matrix a1_gram =
        Matrix::Identity(spec.d, spec.d) - blocks.a1.adjoint() * blocks.a1;
    if (is_psd((a1_gram + a1_gram.adjoint()) / 2.0, tol)) return Verdict::True;
    return Verdict::Inconclusive;
}

CnuStatus cnu_status(const OperatorSpec& spec, const Tolerance& tol, int max_depth) {
    if (!is_contraction(spec, tol)) {
        throw std::invalid_argument("cnu_status: operator is not a contraction");
    }

    // Phase (i): a unimodular eigenvector of a contraction spans a reducing
    // subspace on which T is unitary.  Check T, then T* through the top block
    // (for |mu| >= 1 the shift tail forces co-eigenvectors into the head).
    for (const EigenPair& ep : nonzero_point_spectrum(spec, tol)) {
        if (std::abs(ep.value) < 1.0 - tol.eps_eig) continue;
        for (Index c = 0; c < ep.vectors.cols(); ++c) {
            Vector v = ep.vectors.col(c).normalized();
            if (unimodular_witness_ok(spec, v)) {
                return CnuStatus{CnuVerdict::NotCnu, std::move(v), ep.value, 0, {}};
            }
        }
    }
    const EigenCriterionBlocks blocks = eigen_blocks(spec);
    for (const EigenPair& ep : general_eigen(blocks.a1.adjoint(), tol)) {
        if (std::abs(ep.value) < 1.0 - tol.eps_eig) continue;
        for (Index c = 0; c < ep.vectors.cols(); ++c) {
            Vector v = ep.vectors.col(c).normalized();
            if (unimodular_witness_ok(spec, v)) {
                return CnuStatus{CnuVerdict::NotCnu, std::move(v), ep.value, 0, {}};
            }
        }
    }

    // Phase (ii): grow the smallest reducing subspace containing both defect
    // ranges.  Covering the e_0..e_{d+k-1} window certifies c.n.u. (T-orbits
    // of the window reach every basis vector); exact stabilization short of
    // the window exhibits a unitary complement.
    const Index d = spec.d;
    const Index k = spec.k;
    const DefectGrams g = defect_grams(spec);
    Index window = d + k;
    Matrix seed(window, 2 * window);
    seed << embed_top_left(g.gram_t, window), g.gram_tstar;
    Matrix basis = column_space_basis(seed, tol);

    const double cover_tol = 1e-9;
    auto window_covered = [&](const Matrix& q) {
        for (Index i = 0; i < d + k; ++i) {
            Vector e = Vector::Zero(q.rows());
            e[i] = Complex(1.0, 0.0);
            const double residual = (e - q * (q.adjoint() * e)).norm();
            if (residual > cover_tol) return false;
        }
        return true;
    };

    int depth = 0;
    while (true) {
        if (window_covered(basis)) {
            return CnuStatus{CnuVerdict::Certified, {}, std::nullopt, depth, {}};
        }
        if (depth >= max_depth) {
            const Index r_cap = std::min<Index>(6, max_depth);
            return CnuStatus{CnuVerdict::Inconclusive, {}, std::nullopt, max_depth,
                             joint_kernel_dims(spec, tol, r_cap)};
        }
        const Index next_window = window + k;
        const Index q = basis.cols();
        Matrix candidates(next_window, 3 * q);
        for (Index c = 0; c < q; ++c) {
            candidates.col(c) = padded(basis.col(c), next_window);
            candidates.col(q + c) = padded(shiftpert::apply(spec, basis.col(c)), next_window);
            candidates.col(2 * q + c) =
                padded(apply_adjoint(spec, basis.col(c)), next_window);
        }
        Matrix next_basis = column_space_basis(candidates, tol);
        ++depth;
        if (next_basis.cols() == q) {
            // V reduces T and carries both defect ranges; any unit vector in
            // its orthocomplement is acted on unitarily.
            Vector witness;
            double best = 0.0;
            for (Index i = 0; i < next_window; ++i) {
                Vector e = Vector::Zero(next_window);
                e[i] = Complex(1.0, 0.0);
                Vector residual = e - next_basis * (next_basis.adjoint() * e);
                if (residual.norm() > best) {
                    best = residual.norm();
                    witness = residual;
                }
            }
            if (best > 1e-6) {
                witness.normalize();
                return CnuStatus{CnuVerdict::NotCnu, std::move(witness), std::nullopt, depth, {}};
            }
            // No usable complement direction in the frame: report the cap.
            const Index r_cap = std::min<Index>(6, max_depth);
            return CnuStatus{CnuVerdict::Inconclusive, {}, std::nullopt, depth,
                             joint_kernel_dims(spec, tol, r_cap)};
        }
        basis = std::move(next_basis);
        window = next_window;
    }
}

ClassificationReport classify(const OperatorSpec& spec, const Tolerance& tol, int max_depth) {
    ClassificationReport report;
    report.d = spec.d;
    report.k = spec.k;

    const DefectGrams g = defect_grams(spec);
    const Matrix embedded = embed_top_left(g.gram_t, spec.d + spec.k);

    const PsdResult contraction = is_psd_ex(g.gram_t, tol);
    report.is_contraction = contraction.psd;
    if (contraction.marginal) report.marginal_flags.push_back("contraction");

    const RankResult rank_t = matrix_rank_ex(g.gram_t, tol);
    const RankResult rank_tstar = matrix_rank_ex(g.gram_tstar, tol);
    report.dim_dt = rank_t.rank;
    report.dim_dtstar = rank_tstar.rank;
    if (rank_t.marginal) report.marginal_flags.push_back("dim_DT");
    if (rank_tstar.marginal) report.marginal_flags.push_back("dim_DTstar");

    Matrix joined(spec.d + spec.k, 2 * (spec.d + spec.k));
    joined << embedded, g.gram_tstar;
    const RankResult rank_joined = matrix_rank_ex(joined, tol);
    report.inclusion = rank_joined.rank == rank_tstar.rank;
    if (rank_joined.marginal) report.marginal_flags.push_back("inclusion");

    report.douglas_lambda = douglas_lambda(spec, tol);

    if (report.is_contraction) {
        const PsdResult hypo = is_psd_ex(g.gram_tstar - embedded, tol);
        report.hyponormal = hypo.psd ? Verdict::True : Verdict::False;
        if (hypo.marginal) report.marginal_flags.push_back("hyponormal");
    } else {
        report.hyponormal = Verdict::NotApplicable;
    }

    report.point_spectrum = nonzero_point_spectrum(spec, tol);
    {
        // Flag eigenvalues sitting near the zero cut or the unimodular cut.
        const EigenCriterionBlocks blocks = eigen_blocks(spec);
        const double zero_cut = tol.eps_eig * std::max(1.0, operator_norm(blocks.a1));
        bool near_zero = false;
        bool near_one = false;
        for (const EigenPair& ep : general_eigen(blocks.a1, tol)) {
            const double mod = std::abs(ep.value);
            if (mod > zero_cut / 10.0 && mod <= 10.0 * zero_cut) near_zero = true;
            if (std::abs(mod - 1.0) <= 10.0 * tol.eps_eig && mod > zero_cut) near_one = true;
        }
        if (near_zero) report.marginal_flags.push_back("point_spectrum");
        if (near_one && report.is_contraction) report.marginal_flags.push_back("cnu_unimodular");
    }

    if (!report.point_spectrum.empty()) {
        report.analytic = Verdict::False;
    } else {
        const EigenCriterionBlocks blocks = eigen_blocks(spec);
        const Matrix a1_gram =
            Matrix::Identity(spec.d, spec.d) - blocks.a1.adjoint() * blocks.a1;
        const PsdResult a1_contraction = is_psd_ex((a1_gram + a1_gram.adjoint()) / 2.0, tol);
        report.analytic = a1_contraction.psd ? Verdict::True : Verdict::Inconclusive;
        if (a1_contraction.marginal) report.marginal_flags.push_back("analytic");
    }

    if (report.is_contraction) {
        report.cnu = cnu_status(spec, tol, max_depth);
    }

    report.in_paper_class = report.is_contraction && report.inclusion &&
                            report.dim_dt == spec.d &&
                            report.dim_dtstar == spec.d + spec.k && report.cnu &&
                            report.cnu->verdict == CnuVerdict::Certified;
    return report;
}

}  // namespace shiftpert
