#include "shiftpert/operator_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace shiftpert {

OperatorSpec build_operator(Index d, Index k, const Matrix& coeff) {
    if (d < 1 || k < 1) {
        throw std::invalid_argument("build_operator: d and k must be positive");
    }
    if (coeff.rows() != d + k || coeff.cols() != d) {
        throw std::invalid_argument(
            "build_operator: C must be " + std::to_string(d + k) + "x" + std::to_string(d) +
            ", got " + std::to_string(coeff.rows()) + "x" + std::to_string(coeff.cols()));
    }
    if (!coeff.allFinite()) {
        throw std::invalid_argument("build_operator: C contains a non-finite entry");
    }
    return OperatorSpec{d, k, coeff};
}

Vector apply(const OperatorSpec& spec, const Vector& x) {
    const Index L = x.size();
    if (L < 1) throw std::invalid_argument("apply: x must have length >= 1");
    const Index out_len = std::max(spec.d + spec.k, L + spec.k);
    Vector out = Vector::Zero(out_len);
    const Index head = std::min(L, spec.d);
    out.head(spec.d + spec.k) += spec.coeff.leftCols(head) * x.head(head);
    for (Index j = spec.d; j < L; ++j) out[j + spec.k] += x[j];
    return out;
}

Vector apply_adjoint(const OperatorSpec& spec, const Vector& x) {
    const Index L = x.size();
    if (L < 1) throw std::invalid_argument("apply_adjoint: x must have length >= 1");
    const Index out_len = std::max(L - spec.k, spec.d);
    Vector out = Vector::Zero(out_len);
    Vector window = Vector::Zero(spec.d + spec.k);
    window.head(std::min(L, spec.d + spec.k)) = x.head(std::min(L, spec.d + spec.k));
    out.head(spec.d) = spec.coeff.adjoint() * window;
    for (Index j = spec.d; j < out_len; ++j) {
        if (j + spec.k < L) out[j] += x[j + spec.k];
    }
    return out;
}

StageBlock stage_block(const OperatorSpec& spec, Index r) {
    if (r < 1) throw std::invalid_argument("stage_block: r must be >= 1");
    Matrix m(spec.d + r * spec.k, spec.d);
    for (Index j = 0; j < spec.d; ++j) {
        Vector v = Vector::Zero(spec.d);
        v[j] = Complex(1.0, 0.0);
        for (Index s = 0; s < r; ++s) v = shiftpert::apply(spec, v);
        // sizes chase the exact support: d -> d+k -> ... -> d+rk
        m.col(j) = v;
    }
    return StageBlock{r, std::move(m)};
}

Matrix truncate(const OperatorSpec& spec, Index N) {
    if (N < spec.d + spec.k) {
        throw std::invalid_argument("truncate: N must be >= d+k");
    }
    Matrix t = Matrix::Zero(N, N);
    t.block(0, 0, spec.d + spec.k, spec.d) = spec.coeff;
    for (Index j = spec.d; j < N; ++j) {
        if (j + spec.k < N) t(j + spec.k, j) = Complex(1.0, 0.0);
    }
    return t;
}

OperatorSpec rank_one_operator(Index k, const Vector& alpha) {
    if (k < 1) throw std::invalid_argument("rank_one_operator: k must be >= 1");
    if (alpha.size() != k + 1) {
        throw std::invalid_argument("rank_one_operator: alpha must have length k+1 = " +
                                    std::to_string(k + 1));
    }
    Matrix coeff(k + 1, 1);
    coeff.col(0) = alpha;
    return build_operator(1, k, coeff);
}

}  // namespace shiftpert
