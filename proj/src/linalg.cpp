#include "freespec/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>

namespace freespec {

double hermiticity_tolerance(const Matrix& m) {
    return 1e-8 * std::max(1.0, m.norm());
}

bool is_hermitian(const Matrix& m) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).norm() <= hermiticity_tolerance(m);
}

not_positive_definite::not_positive_definite(double eig)
    : std::domain_error("matrix is not positive definite (eigenvalue " + std::to_string(eig) + ")"),
      offending_eigenvalue(eig) {}

singular_matrix::singular_matrix(double sigma)
    : std::domain_error("matrix is numerically singular (sigma_min " + std::to_string(sigma) + ")"),
      sigma_min(sigma) {}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
    Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

namespace {

// Hermitian part after gating; all eigenvalue routines funnel through here.
Matrix checked_hermitian_part(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("herm eig: matrix must be square");
    const double dev = (m - m.adjoint()).norm();
    if (dev > hermiticity_tolerance(m))
        throw std::domain_error("herm eig: matrix deviates from Hermitian by " + std::to_string(dev));
    return 0.5 * (m + m.adjoint());
}

}  // namespace

Eigen::VectorXd herm_eigenvalues(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(checked_hermitian_part(m), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double herm_min_eig(const Matrix& m) { return herm_eigenvalues(m)(0); }

double herm_max_eig(const Matrix& m) {
    const Eigen::VectorXd ev = herm_eigenvalues(m);
    return ev(ev.size() - 1);
}

double op_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    // sqrt of the top Gram eigenvalue; full relative accuracy for the
    // largest singular value, much cheaper than a full SVD
    const Matrix gram = m.rows() <= m.cols() ? Matrix(m * m.adjoint()) : Matrix(m.adjoint() * m);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (gram + gram.adjoint()), Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues()(es.eigenvalues().size() - 1)));
}

double sigma_min(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

Matrix inverse(const Matrix& m, double eps) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix must be square");
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= eps * std::max(1.0, sv(0))) throw singular_matrix(sv(sv.size() - 1));
    return m.inverse();
}

namespace {

Matrix posdef_function(const Matrix& m, double (*f)(double)) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(checked_hermitian_part(m));
    const Eigen::VectorXd ev = es.eigenvalues();
    const double floor = 1e-12 * std::max(1.0, std::abs(ev(ev.size() - 1)));
    if (ev(0) <= floor) throw not_positive_definite(ev(0));
    Eigen::VectorXd mapped(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) mapped(i) = f(ev(i));
    return es.eigenvectors() * mapped.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Matrix sqrt_posdef(const Matrix& m) {
    return posdef_function(m, +[](double x) { return std::sqrt(x); });
}

Matrix inv_sqrt_posdef(const Matrix& m) {
    return posdef_function(m, +[](double x) { return 1.0 / std::sqrt(x); });
}

Matrix schur_complement_11(const Matrix& m, Eigen::Index k) {
    if (m.rows() != m.cols()) throw std::invalid_argument("schur_complement_11: matrix must be square");
    if (k <= 0 || k >= m.rows()) throw std::invalid_argument("schur_complement_11: pivot size out of range");
    if (!is_hermitian(m)) throw std::domain_error("schur_complement_11: matrix must be Hermitian");
    const Matrix a = m.topLeftCorner(k, k);
    const double amin = herm_min_eig(a);
    if (amin <= 0) throw not_positive_definite(amin);
    const Matrix b = m.topRightCorner(k, m.cols() - k);
    const Matrix d = m.bottomRightCorner(m.rows() - k, m.cols() - k);
    Matrix s = d - b.adjoint() * a.llt().solve(b);
    return 0.5 * (s + s.adjoint());
}

std::vector<Vector> kernel_basis(const Matrix& m, double eps) {
    if (m.cols() == 0) return {};
    if (m.rows() == 0 || m.norm() == 0.0) {
        std::vector<Vector> full;
        for (Eigen::Index j = 0; j < m.cols(); ++j) full.push_back(Vector::Unit(m.cols(), j));
        return full;
    }
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    std::vector<Vector> out;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const double s = j < sv.size() ? sv(j) : 0.0;
        if (s <= eps) out.push_back(svd.matrixV().col(j));
    }
    return out;
}

std::vector<Vector> column_space_basis(const Matrix& m, double eps) {
    if (m.size() == 0 || m.norm() == 0.0) return {};
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    std::vector<Vector> out;
    for (Eigen::Index j = 0; j < sv.size(); ++j)
        if (sv(j) > eps) out.push_back(svd.matrixU().col(j));
    return out;
}

double max_principal_angle(const std::vector<Vector>& a, const std::vector<Vector>& b) {
    if (a.size() != b.size()) return M_PI / 2;
    if (a.empty()) return 0.0;
    Matrix qa(a[0].size(), a.size()), qb(b[0].size(), b.size());
    for (size_t j = 0; j < a.size(); ++j) qa.col(j) = a[j];
    for (size_t j = 0; j < b.size(); ++j) qb.col(j) = b[j];
    const Matrix m = qa.adjoint() * qb;
    Eigen::JacobiSVD<Matrix> svd(m);
    const double c = std::min(1.0, svd.singularValues()(svd.singularValues().size() - 1));
    // the cosine route floors near sqrt(machine eps); switch to the sine
    // formula for nearly equal subspaces
    if (c < 0.99) return std::acos(c);
    const double s = std::min(1.0, op_norm(qb - qa * m));
    return std::asin(s);
}

}  // namespace freespec
