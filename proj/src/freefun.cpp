#include "freespec/freefun.hpp"

#include <algorithm>
#include <cmath>

namespace freespec {

Matrix nilpotent_shift() {
    Matrix s = Matrix::Zero(2, 2);
    s(0, 1) = 1;
    return s;
}

MatrixTuple shift_tuple(const MatrixTuple& x) {
    const Matrix s = nilpotent_shift();
    std::vector<Matrix> out;
    for (int j = 0; j < x.g(); ++j) out.push_back(kron(s, x[j]));
    return MatrixTuple(std::move(out));
}

namespace {

bool gs_append_rel(std::vector<Matrix>& basis, const Matrix& m, double abs_tol) {
    if (m.norm() <= abs_tol) return false;
    Matrix r = m;
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) r -= (b.adjoint() * r).trace() * b;
    if (r.norm() <= abs_tol) return false;
    basis.push_back(r / r.norm());
    return true;
}

}  // namespace

std::optional<int> nilpotency_order(const MatrixTuple& x, int cap) {
    if (!x.square()) throw std::invalid_argument("nilpotency_order: tuple must be square");
    double rho = 0;
    for (int j = 0; j < x.g(); ++j) rho = std::max(rho, op_norm(x[j]));
    if (rho == 0.0) return 1;

    // span of length-m word values of the normalized tuple; empty span at
    // length m means every length-m word vanishes
    std::vector<Matrix> letters;
    for (int j = 0; j < x.g(); ++j) letters.push_back(x[j] / rho);
    std::vector<Matrix> level;
    for (const auto& l : letters) gs_append_rel(level, l, 1e-12);
    for (int m = 1; m <= cap; ++m) {
        if (level.empty()) return m;
        std::vector<Matrix> next;
        for (const auto& b : level)
            for (const auto& l : letters) gs_append_rel(next, b * l, 1e-12);
        level = std::move(next);
    }
    return std::nullopt;
}

Matrix nilpotent_eval(const PowerSeries& f, const MatrixTuple& x, Complex z) {
    if (!x.square()) throw std::invalid_argument("nilpotent_eval: tuple must be square");
    if (f.coeffs.g() != x.g()) throw std::invalid_argument("nilpotent_eval: variable count mismatch");
    const int cap = std::max<int>(static_cast<int>(x.rows()), f.trunc + 1);
    const auto order = nilpotency_order(x, cap);
    if (!order) throw std::domain_error("nilpotent_eval: tuple is not detectably nilpotent");
    if (*order > f.trunc) throw std::domain_error("nilpotent_eval: truncation too short for nilpotency order");

    const Eigen::Index n = x.rows();
    Matrix out = Matrix::Zero(f.coeffs.coeff_rows() * n, f.coeffs.coeff_cols() * n);
    for (const auto& [w, coeff] : f.coeffs.terms()) {
        if (static_cast<int>(w.size()) >= *order) continue;  // word vanishes
        Complex zp = 1;
        for (size_t k = 0; k < w.size(); ++k) zp *= z;
        out += zp * kron(coeff, eval_word(x, w));
    }
    return out;
}

AffinePart affine_part(const PowerSeries& f) {
    if (f.trunc < 1) throw std::invalid_argument("affine_part: truncation degree must be >= 1");
    AffinePart out;
    out.f0 = Matrix::Zero(f.coeffs.coeff_rows(), f.coeffs.coeff_cols());
    out.ell.assign(f.coeffs.g(), out.f0);
    if (auto it = f.coeffs.terms().find(Word{}); it != f.coeffs.terms().end()) out.f0 = it->second;
    for (int j = 0; j < f.coeffs.g(); ++j)
        if (auto it = f.coeffs.terms().find(Word{j}); it != f.coeffs.terms().end())
            out.ell[j] = it->second;
    return out;
}

Matrix julia_matrix(const Matrix& m, double rho, Complex z) {
    if (z == Complex(0, 0)) throw std::invalid_argument("julia_matrix: z must be nonzero");
    if (rho * op_norm(m) >= 1.0) throw std::domain_error("julia_matrix: rho * ||M|| must be < 1");
    const Eigen::Index p = m.rows(), q = m.cols();
    const Matrix dq = sqrt_posdef(Matrix::Identity(q, q) - rho * rho * m.adjoint() * m);
    const Matrix dp = sqrt_posdef(Matrix::Identity(p, p) - rho * rho * m * m.adjoint());
    Matrix t(p + q, p + q);
    t.topLeftCorner(p, p) = dp;
    t.topRightCorner(p, q) = (rho / z) * m;
    t.bottomLeftCorner(q, p) = -rho * z * m.adjoint();
    t.bottomRightCorner(q, q) = dq;
    return t;
}

double series_growth_rate(const PowerSeries& f) {
    std::vector<double> level_max(f.trunc + 1, 0.0);
    for (const auto& [w, coeff] : f.coeffs.terms())
        if (!w.empty()) level_max[w.size()] = std::max(level_max[w.size()], op_norm(coeff));
    double rate = 0;
    for (int l = 1; l <= f.trunc; ++l)
        if (level_max[l] > 0) rate = std::max(rate, std::pow(level_max[l], 1.0 / l));
    return rate;
}

Matrix eval_series(const PowerSeries& f, const MatrixTuple& x) {
    const double rate = series_growth_rate(f);
    const double row = op_norm(row_matrix(x));
    if (f.coeffs.g() * rate * row > 0.5 + 1e-12)
        throw std::domain_error("eval_series: point outside the convergence gate");
    return eval_poly(f.coeffs, x);
}

namespace {

void require_intertwining(const MatrixTuple& x, const MatrixTuple& y, const Matrix& gamma,
                          double eps, IntertwineOrientation o) {
    if (x.g() != y.g()) throw std::invalid_argument("check_intertwining: variable count mismatch");
    for (int j = 0; j < x.g(); ++j) {
        const Matrix lhs = o == IntertwineOrientation::x_gamma_eq_gamma_y ? Matrix(x[j] * gamma)
                                                                          : Matrix(gamma * x[j]);
        const Matrix rhs = o == IntertwineOrientation::x_gamma_eq_gamma_y ? Matrix(gamma * y[j])
                                                                          : Matrix(y[j] * gamma);
        const double scale = std::max(1.0, lhs.norm() + rhs.norm());
        if ((lhs - rhs).norm() > eps * scale)
            throw std::domain_error("check_intertwining: premise violated beyond tolerance");
    }
}

double conclusion_residual(const Matrix& fx, const Matrix& fy, const Matrix& gamma,
                           IntertwineOrientation o) {
    return o == IntertwineOrientation::x_gamma_eq_gamma_y ? (fx * gamma - gamma * fy).norm()
                                                          : (gamma * fx - fy * gamma).norm();
}

}  // namespace

double check_intertwining(const PowerSeries& f, const MatrixTuple& x, const MatrixTuple& y,
                          const Matrix& gamma, double eps, IntertwineOrientation o) {
    require_intertwining(x, y, gamma, eps, o);
    return conclusion_residual(eval_series(f, x), eval_series(f, y), gamma, o);
}

double check_intertwining(const Realization& r, const MatrixTuple& x, const MatrixTuple& y,
                          const Matrix& gamma, double eps, IntertwineOrientation o) {
    require_intertwining(x, y, gamma, eps, o);
    return conclusion_residual(rational_eval(r, x), rational_eval(r, y), gamma, o);
}

PowerSeries realization_series(const Realization& r, int trunc) {
    FreePolynomial coeffs = FreePolynomial::scalar(r.A.g());
    // depth-first over words, carrying c* A^w
    struct Walker {
        const Realization& r;
        FreePolynomial& coeffs;
        int trunc;
        void walk(const Eigen::RowVectorXcd& prefix, Word& w) {
            const Complex value = prefix * r.b;
            coeffs.add_term(w, value);
            if (static_cast<int>(w.size()) == trunc) return;
            for (int j = 0; j < r.A.g(); ++j) {
                w.push_back(j);
                walk(prefix * r.A[j], w);
                w.pop_back();
            }
        }
    } walker{r, coeffs, trunc};
    Word w;
    walker.walk(r.c.adjoint(), w);
    return PowerSeries(std::move(coeffs), trunc);
}

}  // namespace freespec
