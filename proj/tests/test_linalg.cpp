#include "freespec/linalg.hpp"
#include "freespec/rng.hpp"

#include <doctest.h>

using namespace freespec;

namespace {

Matrix random_hermitian(Rng& rng, Eigen::Index n) {
    const Matrix g = rng.gaussian(n, n);
    return 0.5 * (g + g.adjoint());
}

}  // namespace

TEST_CASE("kron identity and diagonal cases") {
    CHECK((kron(Matrix::Identity(2, 2), Matrix::Identity(3, 3)) - Matrix::Identity(6, 6)).norm() ==
          0.0);

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 2;
    d(1, 1) = 3;
    Matrix expect = Matrix::Zero(4, 4);
    expect(0, 0) = 2;
    expect(1, 1) = 2;
    expect(2, 2) = 3;
    expect(3, 3) = 3;
    CHECK((kron(d, Matrix::Identity(2, 2)) - expect).norm() == 0.0);
}

TEST_CASE("kron places the right factor in the shift block") {
    Matrix s = Matrix::Zero(2, 2);
    s(0, 1) = 1;
    Rng rng(7);
    const Matrix x = rng.gaussian(2, 2);
    const Matrix k = kron(s, x);
    CHECK((k.topRightCorner(2, 2) - x).norm() == 0.0);
    CHECK(k.topLeftCorner(2, 2).norm() == 0.0);
    CHECK(k.bottomRows(2).norm() == 0.0);
}

TEST_CASE("kron mixed product identity") {
    Rng rng(11);
    for (int i = 0; i < 25; ++i) {
        const Eigen::Index p = 2 + i % 3, q = 2 + (i / 3) % 3;
        const Matrix a = rng.gaussian(p, q), c = rng.gaussian(q, p);
        const Matrix b = rng.gaussian(q, p), d = rng.gaussian(p, q);
        const Matrix lhs = kron(a, b) * kron(c, d);
        const Matrix rhs = kron(Matrix(a * c), Matrix(b * d));
        CHECK((lhs - rhs).norm() <= 1e-12 * rhs.norm());
    }
}

TEST_CASE("direct_sum") {
    CHECK(direct_sum(Matrix::Zero(1, 1), Matrix::Zero(1, 1)).norm() == 0.0);
    CHECK((direct_sum(Matrix::Identity(2, 2), Matrix::Identity(3, 3)) - Matrix::Identity(5, 5))
              .norm() == 0.0);
    Matrix one = Matrix::Constant(1, 1, 1.0), minus = Matrix::Constant(1, 1, -1.0);
    const Matrix d = direct_sum(one, minus);
    CHECK(d(0, 0) == Complex(1, 0));
    CHECK(d(1, 1) == Complex(-1, 0));
}

TEST_CASE("herm_min_eig basic values and errors") {
    CHECK(herm_min_eig(Matrix::Identity(4, 4)) == doctest::Approx(1.0));
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 2;
    d(1, 1) = -1;
    CHECK(herm_min_eig(d) == doctest::Approx(-1.0));
    Matrix m(2, 2);
    m << 1.0, 0.5, 0.5, 1.0;
    CHECK(herm_min_eig(m) == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(herm_min_eig(Matrix::Zero(2, 3)), std::invalid_argument);
    Matrix bad(2, 2);
    bad << 0.0, 1.0, -1.0, 0.0;  // skew, far from Hermitian
    CHECK_THROWS_AS(herm_min_eig(bad), std::domain_error);
}

TEST_CASE("herm_min_eig keeps 1e-10 relative accuracy at size 64") {
    Rng rng(37);
    const Eigen::Index n = 64;
    Eigen::VectorXd diag(n);
    for (Eigen::Index i = 0; i < n; ++i) diag(i) = rng.uniform(-3.0, 3.0);
    const double truth = diag.minCoeff();
    const Matrix u = rng.unitary(n);
    const Matrix m = u * diag.cast<Complex>().asDiagonal() * u.adjoint();
    CHECK(std::abs(herm_min_eig(m) - truth) <= 1e-10 * m.norm());
}

TEST_CASE("herm_min_eig is unitarily invariant") {
    Rng rng(13);
    for (int i = 0; i < 20; ++i) {
        const Eigen::Index n = 2 + i % 5;
        const Matrix m = random_hermitian(rng, n);
        const Matrix u = rng.unitary(n);
        CHECK(herm_min_eig(u.adjoint() * m * u) ==
              doctest::Approx(herm_min_eig(m)).epsilon(1e-9));
    }
}

TEST_CASE("op_norm basic values") {
    CHECK(op_norm(Matrix::Zero(3, 3)) == 0.0);
    Rng rng(17);
    CHECK(op_norm(rng.unitary(4)) == doctest::Approx(1.0).epsilon(1e-12));
    Matrix row(1, 2);
    row << Complex(0.6, 0), Complex(0, 0.8);
    CHECK(op_norm(row) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("op_norm keeps 1e-10 relative accuracy at size 64") {
    Rng rng(41);
    const Eigen::Index n = 64;
    Eigen::VectorXd sv(n);
    for (Eigen::Index i = 0; i < n; ++i) sv(i) = rng.uniform(0.0, 2.0);
    sv(17) = 3.0;  // known top singular value
    const Matrix m = rng.unitary(n) * sv.cast<Complex>().asDiagonal() * rng.unitary(n);
    CHECK(std::abs(op_norm(m) - 3.0) <= 1e-10 * 3.0);
}

TEST_CASE("op_norm of the adjoint") {
    Rng rng(19);
    for (int i = 0; i < 20; ++i) {
        const Matrix m = rng.gaussian(2 + i % 4, 3 + i % 3);
        CHECK(op_norm(m) == doctest::Approx(op_norm(Matrix(m.adjoint()))).epsilon(1e-12));
    }
}

TEST_CASE("inv_sqrt_posdef on diagonal and identity inputs") {
    CHECK((inv_sqrt_posdef(Matrix::Identity(3, 3)) - Matrix::Identity(3, 3)).norm() <= 1e-14);
    CHECK((inv_sqrt_posdef(Matrix(4.0 * Matrix::Identity(2, 2))) -
           0.5 * Matrix::Identity(2, 2))
              .norm() <= 1e-14);
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 1;
    d(1, 1) = 0.25;
    Matrix expect = Matrix::Zero(2, 2);
    expect(0, 0) = 1;
    expect(1, 1) = 2;
    CHECK((inv_sqrt_posdef(d) - expect).norm() <= 1e-12);
}

TEST_CASE("inv_sqrt_posdef contracts") {
    Rng rng(23);
    for (int i = 0; i < 10; ++i) {
        const Eigen::Index n = 2 + i % 4;
        const Matrix v = rng.unitary(n);
        Eigen::VectorXd diag(n);
        for (Eigen::Index j = 0; j < n; ++j) diag(j) = rng.uniform(0.2, 3.0);
        const Matrix w = v * diag.cast<Complex>().asDiagonal() * v.adjoint();
        const Matrix m = v * diag.cwiseInverse().cwiseAbs2().cast<Complex>().asDiagonal() *
                         v.adjoint();  // W^{-2}
        CHECK((inv_sqrt_posdef(m) - w).norm() <= 1e-8 * w.norm());

        const Matrix winv = inv_sqrt_posdef(Matrix(w));
        CHECK((winv * w * winv - Matrix::Identity(n, n)).norm() <= 1e-9);
        CHECK((winv * winv * w - Matrix::Identity(n, n)).norm() <= 1e-9);
    }
}

TEST_CASE("inv_sqrt_posdef rejects indefinite input with the eigenvalue") {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 2;
    d(1, 1) = -1;
    try {
        inv_sqrt_posdef(d);
        FAIL("expected not_positive_definite");
    } catch (const not_positive_definite& e) {
        CHECK(e.offending_eigenvalue == doctest::Approx(-1.0));
    }
}

TEST_CASE("schur_complement_11 on closed-form inputs") {
    Matrix m(2, 2);
    m << 1.0, 0.5, 0.5, 1.0;
    const Matrix s = schur_complement_11(m, 1);
    CHECK(s.rows() == 1);
    CHECK(s(0, 0).real() == doctest::Approx(0.75));
    CHECK((schur_complement_11(Matrix::Identity(4, 4), 2) - Matrix::Identity(2, 2)).norm() <=
          1e-14);
}

TEST_CASE("schur complement positivity matches the eigenvalue oracle") {
    Rng rng(29);
    int checked = 0;
    for (int i = 0; i < 100; ++i) {
        const Eigen::Index n = 3 + i % 4;
        const Eigen::Index k = 1 + i % (n - 1);
        Matrix m = random_hermitian(rng, n);
        // make the pivot block positive definite
        const Matrix a = m.topLeftCorner(k, k);
        const double shift = std::max(0.0, -herm_min_eig(a)) + rng.uniform(0.3, 1.0);
        m.topLeftCorner(k, k) += shift * Matrix::Identity(k, k);
        const double full_margin = herm_min_eig(m);
        const double schur_margin = herm_min_eig(schur_complement_11(m, k));
        if (std::abs(full_margin) <= 1e-7 || std::abs(schur_margin) <= 1e-7) continue;
        ++checked;
        CHECK((full_margin > 0) == (schur_margin > 0));
    }
    CHECK(checked > 50);
}

TEST_CASE("kernel_basis") {
    CHECK(kernel_basis(Matrix::Identity(3, 3), 1e-9).empty());

    const auto full = kernel_basis(Matrix::Zero(2, 2), 1e-9);
    REQUIRE(full.size() == 2);
    Matrix q(2, 2);
    q.col(0) = full[0];
    q.col(1) = full[1];
    CHECK((q.adjoint() * q - Matrix::Identity(2, 2)).norm() <= 1e-12);

    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1;
    const auto one = kernel_basis(m, 1e-9);
    REQUIRE(one.size() == 1);
    CHECK(std::abs(one[0](1)) == doctest::Approx(1.0));
}

TEST_CASE("sigma_min and inverse") {
    Rng rng(31);
    const Matrix u = rng.unitary(3);
    CHECK(sigma_min(u) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(inverse(Matrix::Zero(2, 2)), singular_matrix);
    const Matrix g = rng.gaussian(4, 4);
    CHECK((inverse(g) * g - Matrix::Identity(4, 4)).norm() <= 1e-10);
}
