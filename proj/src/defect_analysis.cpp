#include "shiftpert/defect_analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace shiftpert {

namespace {

Matrix hermitize(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

}  // namespace

Matrix embed_top_left(const Matrix& a, Index n) {
    if (a.rows() > n || a.cols() > n) {
        throw std::invalid_argument("embed_top_left: block does not fit");
    }
    Matrix out = Matrix::Zero(n, n);
    out.block(0, 0, a.rows(), a.cols()) = a;
    return out;
}

DefectGrams defect_grams(const OperatorSpec& spec) {
    const Matrix& c = spec.coeff;
    DefectGrams g;
    g.gram_t = hermitize(Matrix::Identity(spec.d, spec.d) - c.adjoint() * c);
    g.gram_tstar =
        hermitize(Matrix::Identity(spec.d + spec.k, spec.d + spec.k) - c * c.adjoint());
    return g;
}

StageDefectGrams stage_defect_grams(const OperatorSpec& spec, Index r) {
    const StageBlock stage = stage_block(spec, r);
    const Index w = spec.d + r * spec.k;
    StageDefectGrams g;
    g.r = r;
    g.gram_t = hermitize(Matrix::Identity(spec.d, spec.d) - stage.m.adjoint() * stage.m);
    g.gram_tstar = hermitize(Matrix::Identity(w, w) - stage.m * stage.m.adjoint());
    return g;
}

std::pair<Index, Index> defect_dimensions(const OperatorSpec& spec, const Tolerance& tol) {
    const DefectGrams g = defect_grams(spec);
    return {matrix_rank(g.gram_t, tol), matrix_rank(g.gram_tstar, tol)};
}

bool defect_inclusion(const OperatorSpec& spec, const Tolerance& tol) {
    const DefectGrams g = defect_grams(spec);
    return column_space_contained(embed_top_left(g.gram_t, spec.d + spec.k), g.gram_tstar, tol);
}

std::optional<double> douglas_lambda(const OperatorSpec& spec, const Tolerance& tol) {
    if (!defect_inclusion(spec, tol)) return std::nullopt;

    const DefectGrams g = defect_grams(spec);
    const Matrix embedded = embed_top_left(g.gram_t, spec.d + spec.k);
    const HermitianEigen eig = hermitian_eigen(g.gram_tstar);

    const double emax = eig.values.size() ? eig.values.cwiseAbs().maxCoeff() : 0.0;
    if (emax <= 0.0) return 0.0;  // G_Tstar == 0 and inclusion holds => G_T == 0

    // Restrict to the column space of G_Tstar and congruence-scale by
    // |eigenvalue|^{-1/2}; the largest eigenvalue of the compressed block is
    // the minimal Douglas constant.
    std::vector<Index> support;
    for (Index i = 0; i < eig.values.size(); ++i) {
        if (std::abs(eig.values(i)) > tol.eps_rank * emax) support.push_back(i);
    }
    if (support.empty()) return 0.0;

    Matrix w(g.gram_tstar.rows(), static_cast<Index>(support.size()));
    for (std::size_t c = 0; c < support.size(); ++c) {
        w.col(static_cast<Index>(c)) =
            eig.vectors.col(support[c]) / std::sqrt(std::abs(eig.values(support[c])));
    }
    const Matrix compressed = (w.adjoint() * embedded * w + (w.adjoint() * embedded * w).adjoint()) / 2.0;
    const HermitianEigen inner = hermitian_eigen(compressed);
    const double lam = inner.values.size() ? inner.values.maxCoeff() : 0.0;
    return std::max(0.0, lam);
}

}  // namespace shiftpert
