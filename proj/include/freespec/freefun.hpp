#pragma once

#include "freespec/freesets.hpp"

#include <optional>

namespace freespec {

/// Truncated formal power series: coefficients stored as a FreePolynomial,
/// present only up to the truncation degree.
struct PowerSeries {
    FreePolynomial coeffs;
    int trunc;

    PowerSeries(FreePolynomial c, int truncation) : coeffs(std::move(c)), trunc(truncation) {
        if (trunc < 0 || coeffs.degree() > trunc)
            throw std::invalid_argument("PowerSeries: coefficients beyond truncation degree");
    }
};

/// The 2x2 nilpotent shift [[0,1],[0,0]].
Matrix nilpotent_shift();
/// (S (x) X_1, ..., S (x) X_g), nilpotent of order two.
MatrixTuple shift_tuple(const MatrixTuple& x);

/// Smallest m <= cap with every length-m word evaluating to 0 (within
/// 1e-12 relative to the tuple scale); nullopt when none is found.
std::optional<int> nilpotency_order(const MatrixTuple& x, int cap);

/// Exact evaluation sum_{l=0}^{m} (sum_{|w|=l} F_w (x) X^w) z^l for a tuple
/// nilpotent of order m <= trunc.  Throws when X is not detectably nilpotent
/// or the truncation is too short.
Matrix nilpotent_eval(const PowerSeries& f, const MatrixTuple& x, Complex z);

/// Constant and first-order coefficients of a series: f0 = F_empty and
/// ell_j = F_{x_j}.  Evaluation on shift tuples sees only these:
/// f(S (x) X) = f0 (x) I + S (x) sum_j ell_j X_j.
struct AffinePart {
    Matrix f0;
    std::vector<Matrix> ell;
};
AffinePart affine_part(const PowerSeries& f);

/// Unitary completion [[D(M*), (rho/z) M], [-rho z M*, D(M)]] with defect
/// D(M) = (I - rho^2 M* M)^{1/2}; unitary whenever |z| = 1.
Matrix julia_matrix(const Matrix& m, double rho, Complex z);

/// Geometric growth rate of the coefficients, max over lengths l >= 1 of
/// (max_{|w|=l} ||F_w||)^{1/l}.
double series_growth_rate(const PowerSeries& f);

/// Truncated evaluation sum_{|w| <= trunc} F_w (x) X^w, gated on
/// g * rate * ||row(X)|| <= 0.5 so the dropped tail is geometrically small.
/// Throws std::domain_error outside the gate.
Matrix eval_series(const PowerSeries& f, const MatrixTuple& x);

/// Which side the intertwiner sits on.  The default orientation is
/// X_j Gamma = Gamma Y_j  =>  f(X) Gamma = Gamma f(Y); the flipped one is
/// Gamma X_j = Y_j Gamma  =>  Gamma f(X) = f(Y) Gamma.
enum class IntertwineOrientation { x_gamma_eq_gamma_y, gamma_x_eq_y_gamma };

/// Frobenius residual of the intertwining conclusion; throws when the
/// premise X_j Gamma = Gamma Y_j (resp. flipped) fails beyond eps * scale.
double check_intertwining(const PowerSeries& f, const MatrixTuple& x, const MatrixTuple& y,
                          const Matrix& gamma, double eps = 1e-9,
                          IntertwineOrientation o = IntertwineOrientation::x_gamma_eq_gamma_y);
double check_intertwining(const Realization& r, const MatrixTuple& x, const MatrixTuple& y,
                          const Matrix& gamma, double eps = 1e-9,
                          IntertwineOrientation o = IntertwineOrientation::x_gamma_eq_gamma_y);

/// Series with F_w = c* A^w b for |w| <= trunc; the truncation of the
/// realization's resolvent expansion.
PowerSeries realization_series(const Realization& r, int trunc);

}  // namespace freespec
