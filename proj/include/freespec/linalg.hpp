#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace freespec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Square pencil / eigenvalue routines require input within this distance of
/// its own adjoint (Frobenius): 1e-8 * max(1, ||M||_F).
double hermiticity_tolerance(const Matrix& m);

bool is_hermitian(const Matrix& m);

struct not_positive_definite : std::domain_error {
    double offending_eigenvalue;
    explicit not_positive_definite(double eig);
};

struct singular_matrix : std::domain_error {
    double sigma_min;
    explicit singular_matrix(double sigma);
};

/// Kronecker tensor product; block (i,j) of the result is a(i,j) * b.
Matrix kron(const Matrix& a, const Matrix& b);

/// Block diagonal matrix diag(a, b).
Matrix direct_sum(const Matrix& a, const Matrix& b);

/// Smallest eigenvalue of the Hermitian part (M + M*)/2.  Throws
/// std::invalid_argument for non-square input and std::domain_error if M
/// deviates from Hermitian beyond hermiticity_tolerance.
double herm_min_eig(const Matrix& m);

/// Largest eigenvalue, same gating as herm_min_eig.
double herm_max_eig(const Matrix& m);

/// All eigenvalues of the Hermitian part, ascending.
Eigen::VectorXd herm_eigenvalues(const Matrix& m);

/// Operator norm (largest singular value).
double op_norm(const Matrix& m);

/// Smallest singular value (0 for empty input).
double sigma_min(const Matrix& m);

/// Inverse of a square matrix; throws singular_matrix when the smallest
/// singular value is <= eps * largest.
Matrix inverse(const Matrix& m, double eps = 1e-12);

/// Principal square root of a Hermitian positive definite matrix.
Matrix sqrt_posdef(const Matrix& m);

/// W with W * M * W = I for Hermitian positive definite M; throws
/// not_positive_definite carrying the offending eigenvalue otherwise.
Matrix inv_sqrt_posdef(const Matrix& m);

/// D - B* A^{-1} B for the partition M = [[A, B], [B*, D]] with A the leading
/// k x k block; requires M Hermitian and A positive definite.
Matrix schur_complement_11(const Matrix& m, Eigen::Index k);

/// Orthonormal basis of the span of right-singular vectors with singular
/// value <= eps; empty when M is injective.
std::vector<Vector> kernel_basis(const Matrix& m, double eps);

/// Orthonormal basis of the column span of m (columns with singular value
/// > eps after SVD).
std::vector<Vector> column_space_basis(const Matrix& m, double eps = 1e-10);

/// Largest principal angle (radians) between the spans of two orthonormal
/// families.  Dimension mismatch gives pi/2.
double max_principal_angle(const std::vector<Vector>& a, const std::vector<Vector>& b);

}  // namespace freespec
