#pragma once

#include "freespec/linalg.hpp"
#include "freespec/rng.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace freespec {

/// g-tuple of same-shape complex matrices.  Carries points X as well as
/// pencil coefficient tuples.
class MatrixTuple {
public:
    MatrixTuple() = default;
    explicit MatrixTuple(std::vector<Matrix> entries);
    MatrixTuple(std::initializer_list<Matrix> entries);

    static MatrixTuple zero(int g, Eigen::Index rows, Eigen::Index cols);

    int g() const { return static_cast<int>(entries_.size()); }
    Eigen::Index rows() const { return entries_.empty() ? 0 : entries_[0].rows(); }
    Eigen::Index cols() const { return entries_.empty() ? 0 : entries_[0].cols(); }
    bool square() const { return rows() == cols(); }

    const Matrix& operator[](int j) const { return entries_.at(j); }
    Matrix& operator[](int j) { return entries_.at(j); }
    const std::vector<Matrix>& entries() const { return entries_; }

    MatrixTuple scaled(Complex t) const;

private:
    std::vector<Matrix> entries_;
};

MatrixTuple tuple_direct_sum(const MatrixTuple& x, const MatrixTuple& y);
/// (U* X_1 U, ..., U* X_g U)
MatrixTuple unitary_conj(const Matrix& u, const MatrixTuple& x);
/// (U X_1, ..., U X_g)
MatrixTuple left_mult(const Matrix& u, const MatrixTuple& x);
/// (V* X_1 U, ..., V* X_g U)
MatrixTuple two_sided(const Matrix& v, const MatrixTuple& x, const Matrix& u);
/// [X_1 X_2 ... X_g]
Matrix row_matrix(const MatrixTuple& x);
MatrixTuple gaussian_tuple(Rng& rng, int g, Eigen::Index n);

/// Word in g free letters, stored 0-based.  JSON uses 1-based letters.
using Word = std::vector<int>;

/// Finitely supported map Word -> matrix coefficient (all coefficients one
/// shape).  Doubles as the coefficient store of a truncated power series.
class FreePolynomial {
public:
    FreePolynomial(int g, Eigen::Index coeff_rows, Eigen::Index coeff_cols);
    static FreePolynomial scalar(int g);  // 1x1 coefficients

    void add_term(const Word& w, const Matrix& coeff);
    void add_term(const Word& w, Complex coeff);

    const std::map<Word, Matrix>& terms() const { return terms_; }
    int g() const { return g_; }
    Eigen::Index coeff_rows() const { return d_; }
    Eigen::Index coeff_cols() const { return e_; }
    int degree() const;

private:
    int g_;
    Eigen::Index d_, e_;
    std::map<Word, Matrix> terms_;
};

Matrix eval_word(const MatrixTuple& x, const Word& w);
Matrix eval_poly(const FreePolynomial& p, const MatrixTuple& x);

/// Sum A_j (x) X_j.
Matrix lambda_pencil(const MatrixTuple& a, const MatrixTuple& x);
/// I + Lambda_A(X) + Lambda_A(X)*; requires square A.
Matrix monic_pencil(const MatrixTuple& a, const MatrixTuple& x);

enum class Region { inside, boundary_band, outside };
const char* to_string(Region r);

/// Three-way classification with the signed margin that produced it.
struct Classification {
    Region region;
    double margin;
    bool inside() const { return region == Region::inside; }
    bool outside() const { return region == Region::outside; }
};

Classification classify_margin(double margin, double eps);

Classification in_spectrahedron(const MatrixTuple& a, const MatrixTuple& x, double eps = 1e-7);
Classification in_spectraball(const MatrixTuple& g, const MatrixTuple& x, double eps = 1e-7);
/// Membership in {X : sum X_j X_j* < delta^2}.
Classification in_row_ball(const MatrixTuple& x, double delta, double eps = 1e-7);

/**
 * The pair of norm-1 matrices C_1, C_2 that parametrizes the structured
 * spectrahedron and its associated balls.  Inputs are normalized to operator
 * norm 1 on construction; the smallest singular value over both is recorded
 * for invertibility checks.
 */
struct PencilContext {
    Eigen::Index s;
    Matrix C1, C2;
    double c1_sigma_min, c2_sigma_min;

    PencilContext(Matrix c1, Matrix c2);
    const Matrix& C(int j) const { return j == 0 ? C1 : C2; }
    bool invertible(double eps = 1e-8) const {
        return c1_sigma_min > eps && c2_sigma_min > eps;
    }
};

/// The 4s x 4s two-variable coefficient tuple whose monic pencil is the
/// defining pencil below.
MatrixTuple make_R(const PencilContext& ctx);
/// 3s x 3s ball-minimal tuple with B_R = B_E.
MatrixTuple make_E(const PencilContext& ctx);
/// Row factor (s x 2s): E^r_j = e_j^T (x) C_j.
MatrixTuple make_Er(const PencilContext& ctx);
/// Column factor (2s x s): E^c_j = e_j (x) C_j.
MatrixTuple make_Ec(const PencilContext& ctx);

/// The Hermitian 4-block pencil L(X) with Y_j = C_j (x) X_j on the staircase
/// positions; X must be a square 2-tuple.
Matrix defining_pencil(const PencilContext& ctx, const MatrixTuple& x);
/// T(X) = [[Y_1*, Y_2], [Y_2*, Y_1]]; membership in the spectrahedron is
/// equivalent to ||T(X)|| < 1.
Matrix contraction_matrix(const PencilContext& ctx, const MatrixTuple& x);

/// The four equivalent membership tests evaluated side by side.
struct QuadClassification {
    Classification via_pencil;         // herm_min_eig L(X)
    Classification via_contraction;    // 1 - ||T(X)||
    Classification via_left_defect;    // herm_min_eig(I - T T*)
    Classification via_right_defect;   // herm_min_eig(I - T* T)
    bool any_boundary_band() const;
    bool agree() const;
};
QuadClassification membership_quad(const PencilContext& ctx, const MatrixTuple& x, double eps = 1e-7);

/// Descriptor realization r(x) = c* (I - Lambda_A(x))^{-1} b.
struct Realization {
    MatrixTuple A;  // square e x e tuple
    Vector c, b;    // length e
};
/// Evaluate the realization at a square tuple; throws singular_matrix when
/// the resolvent is singular (sigma_min <= eps * scale).
Matrix rational_eval(const Realization& r, const MatrixTuple& x, double eps = 1e-10);

using MarginFn = std::function<double(const MatrixTuple&)>;

/**
 * Seeded sampler producing tuples roughly half inside / half outside the set
 * {margin > 0}.  The reference scale is the median boundary-crossing scale
 * of 9 probe draws, each located by bisection on t -> margin(t X); draws are
 * then Gaussian tuples scaled by scale * U(0.4, 1.6).
 */
class BalancedSampler {
public:
    BalancedSampler(int g, Eigen::Index n, MarginFn margin, std::uint64_t calibration_seed);
    MatrixTuple draw(Rng& rng) const;
    double scale() const { return scale_; }

private:
    int g_;
    Eigen::Index n_;
    double scale_;
};

/// Signed margins used throughout: positive strictly inside.
double spectrahedron_margin(const MatrixTuple& a, const MatrixTuple& x);
double spectraball_margin(const MatrixTuple& g, const MatrixTuple& x);

/**
 * Searches seeded random pairs (X inside D_A, U unitary) for U X outside
 * D_A.  A spectraball-defining A admits no witness; a witness certifies the
 * spectrahedron has no circular-symmetry presentation as a ball.  For
 * 2-variable A the deterministic rank-one candidate (diag(1,0), diag(0,1)),
 * interior-scaled by 0.999 and hit with the coordinate swap unitary, is
 * tested as well.
 */
struct CircularProbeReport {
    int trials = 0;
    int inside_samples = 0;
    bool witness_found = false;
    int witness_trial = -1;
    double witness_margin_before = 0.0, witness_margin_after = 0.0;
    MatrixTuple witness_x;
    Matrix witness_u;
    bool fixed_candidate_tested = false;
    bool fixed_candidate_is_witness = false;
    double fixed_margin_before = 0.0, fixed_margin_after = 0.0;
};
CircularProbeReport circular_symmetry_probe(const MatrixTuple& a, int samples, std::uint64_t seed,
                                            double eps = 1e-7);

/// The two tuples that are inside one factor ball and outside the other,
/// with the per-side scaling factors used to build them.
struct SeparatingWitnesses {
    double rho_row, rho_col;
    MatrixTuple in_row_not_col;  // inside B_{E^r}, outside B_{E^c}
    MatrixTuple in_col_not_row;  // inside B_{E^c}, outside B_{E^r}
};
SeparatingWitnesses separating_witnesses(const PencilContext& ctx);

}  // namespace freespec
