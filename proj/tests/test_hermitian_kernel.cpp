#include <doctest.h>

#include <cmath>

#include "shiftpert/hermitian_kernel.hpp"
#include "test_helpers.hpp"

using namespace shiftpert;
using namespace testutil;

TEST_CASE("hermitian_eigen on known matrices") {
    // characteristic polynomial by hand: (3/4 - x)^2 - 1/16 = 0
    const HermitianEigen e = hermitian_eigen(cmat({{0.75, -0.25}, {-0.25, 0.75}}));
    REQUIRE(e.values.size() == 2);
    CHECK(e.values(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(e.values(1) == doctest::Approx(1.0).epsilon(1e-12));

    const HermitianEigen id = hermitian_eigen(Matrix::Identity(3, 3));
    CHECK((id.values.array() - 1.0).abs().maxCoeff() <= 1e-14);

    const HermitianEigen zero = hermitian_eigen(Matrix::Zero(2, 2));
    CHECK(zero.values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("hermitian_eigen rejects bad input") {
    CHECK_THROWS_AS(hermitian_eigen(cmat({{0.0, 1.0}, {0.0, 0.0}})), std::invalid_argument);
    CHECK_THROWS_AS(hermitian_eigen(Matrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("hermitian_eigen reconstruction and unitarity on random matrices") {
    for (Index n : {2, 5, 16, 64}) {
        const Matrix m = random_hermitian(n, 1000 + static_cast<std::uint64_t>(n));
        const HermitianEigen e = hermitian_eigen(m);
        const Matrix lambda = e.values.cast<Complex>().asDiagonal();
        const double recon = (m - e.vectors * lambda * e.vectors.adjoint()).cwiseAbs().maxCoeff();
        CHECK(recon <= 1e-9 * (1.0 + m.cwiseAbs().maxCoeff()));
        const double unitary =
            (e.vectors.adjoint() * e.vectors - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
        CHECK(unitary <= 1e-10);
        bool ascending = true;
        for (Index i = 1; i < n; ++i) ascending = ascending && e.values(i - 1) <= e.values(i);
        CHECK(ascending);
    }
}

TEST_CASE("is_psd on known matrices") {
    const Tolerance tol;
    CHECK_FALSE(is_psd(cmat({{-0.25, 0.25, 0.0}, {0.25, 0.25, 0.0}, {0.0, 0.0, 1.0}}), tol));
    CHECK(is_psd(cmat({{0.5, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}), tol));
    CHECK(is_psd(Matrix::Zero(3, 3), tol));
}

TEST_CASE("is_psd is stable under unitary congruence") {
    const Tolerance tol;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        Matrix m = random_hermitian(5, 300 + seed);
        if (seed % 2 == 0) m = m.adjoint() * m;  // force PSD on even seeds
        const Matrix u = random_unitary(5, 400 + seed);
        const Matrix congruent = ((u.adjoint() * m * u) + (u.adjoint() * m * u).adjoint()) / 2.0;
        CHECK(is_psd(m, tol) == is_psd(congruent, tol));
    }
}

TEST_CASE("matrix_rank on known matrices") {
    const Tolerance tol;
    CHECK(matrix_rank(cmat({{0.5}}), tol) == 1);
    CHECK(matrix_rank(Matrix::Zero(3, 3), tol) == 0);
    CHECK(matrix_rank(cmat({{0.5, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}), tol) == 3);
    CHECK(matrix_rank(cmat({{0.5, -0.5}, {-0.5, 0.5}}), tol) == 1);
}

TEST_CASE("matrix_rank is invariant under unitary factors") {
    const Tolerance tol;
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        Matrix m = gaussian_matrix(5, 3, 500 + seed);
        m.col(2) = m.col(0) + m.col(1);  // force rank deficiency
        const Matrix u = random_unitary(5, 600 + seed);
        const Matrix v = random_unitary(3, 700 + seed);
        CHECK(matrix_rank(m, tol) == 2);
        CHECK(matrix_rank(u * m * v, tol) == 2);
    }
}

TEST_CASE("kernel_basis") {
    const Tolerance tol;
    const Matrix k1 = kernel_basis(cmat({{1.0, 0.0}, {0.0, 0.0}}), tol);
    REQUIRE(k1.cols() == 1);
    CHECK(std::abs(k1(1, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(k1(0, 0)) <= 1e-14);

    // zero row: the whole domain is kernel
    CHECK(kernel_basis(Matrix::Zero(1, 2), tol).cols() == 2);

    CHECK(kernel_basis(Matrix::Identity(3, 3), tol).cols() == 0);

    // orthonormality
    const Matrix k2 = kernel_basis(gaussian_matrix(2, 5, 42), tol);
    REQUIRE(k2.cols() == 3);
    CHECK((k2.adjoint() * k2 - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("column_space_contained") {
    const Tolerance tol;
    CHECK(column_space_contained(cmat({{1.0}, {0.0}}), Matrix::Identity(2, 2), tol));
    CHECK_FALSE(column_space_contained(Matrix::Identity(2, 2), cmat({{1.0}, {0.0}}), tol));

    // embed of a rank-2 block inside an invertible 3x3
    Matrix a = Matrix::Zero(3, 3);
    a.topLeftCorner(2, 2) = cmat({{0.75, -0.25}, {-0.25, 0.75}});
    const Matrix b = cmat({{0.5, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}});
    CHECK(column_space_contained(a, b, tol));

    CHECK_THROWS_AS(column_space_contained(Matrix::Zero(2, 1), Matrix::Zero(3, 1), tol),
                    std::invalid_argument);
}

TEST_CASE("mutual containment implies equal rank") {
    const Tolerance tol;
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const Matrix a = gaussian_matrix(4, 2 + (seed % 3), 800 + seed);
        const Matrix b = gaussian_matrix(4, 2 + ((seed + 1) % 3), 900 + seed);
        if (column_space_contained(a, b, tol) && column_space_contained(b, a, tol)) {
            CHECK(matrix_rank(a, tol) == matrix_rank(b, tol));
        }
    }
}

TEST_CASE("general_eigen on known matrices") {
    const Tolerance tol;
    SUBCASE("2x2 with eigenvalues 1/2 and 0") {
        const auto pairs = general_eigen(cmat({{0.5, 0.5}, {0.0, 0.0}}), tol);
        REQUIRE(pairs.size() == 2);
        // sorted by real part: 0 first, then 1/2
        CHECK(std::abs(pairs[0].value) <= 1e-12);
        CHECK(std::abs(pairs[1].value - Complex(0.5, 0.0)) <= 1e-12);
        REQUIRE(pairs[1].vectors.cols() == 1);
        // eigenvector for 1/2 is e_0 up to phase
        CHECK(std::abs(pairs[1].vectors(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(pairs[1].vectors(1, 0)) <= 1e-12);
    }
    SUBCASE("nilpotent block has only the eigenvalue 0") {
        const auto pairs = general_eigen(cmat({{0.0, 1.0}, {0.0, 0.0}}), tol);
        REQUIRE(pairs.size() == 1);
        CHECK(std::abs(pairs[0].value) <= 1e-12);
        // geometric eigenspace only
        CHECK(pairs[0].vectors.cols() == 1);
    }
    SUBCASE("1x1") {
        const auto pairs = general_eigen(cmat({{0.25}}), tol);
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0].value == Complex(0.25, 0.0));
    }
}

TEST_CASE("general_eigen groups numerically split eigenvalues") {
    const Tolerance tol;
    Matrix m = Matrix::Zero(3, 3);
    m(0, 0) = Complex(0.5, 0.0);
    m(1, 1) = Complex(0.5 + 1e-12, 0.0);
    m(2, 2) = Complex(0.5 - 1e-12, 0.0);
    const auto pairs = general_eigen(m, tol);
    REQUIRE(pairs.size() == 1);
    CHECK(std::abs(pairs[0].value - Complex(0.5, 0.0)) <= 1e-10);
    CHECK(pairs[0].vectors.cols() == 3);
}

TEST_CASE("general_eigen residual invariant on random matrices") {
    const Tolerance tol;
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const Index n = 3 + static_cast<Index>(seed % 4);
        const Matrix m = gaussian_matrix(n, n, 1100 + seed);
        const double norm = operator_norm(m);
        for (const EigenPair& ep : general_eigen(m, tol)) {
            for (Index c = 0; c < ep.vectors.cols(); ++c) {
                const Vector v = ep.vectors.col(c);
                CHECK((m * v - ep.value * v).norm() <= 10.0 * tol.eps_eig * norm);
                CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-10));
            }
        }
    }
}
