#pragma once

#include "freespec/ballmin.hpp"
#include "freespec/freesets.hpp"

#include <array>
#include <string>

namespace freespec {

/**
 * First-order data (b, L) of a candidate self-map of the spectrahedron:
 * b = value at 0, L = 2x2 matrix of first-order coefficients, row = output
 * coordinate, column = input variable.  Jets of genuine automorphisms have
 * invertible L and b inside the level-one set.
 */
struct AutJet {
    std::array<Complex, 2> b;
    Matrix L;

    double l_sigma_min() const { return sigma_min(L); }
};

/// b as a 1x1 2-tuple, the level-one point the jet is anchored at.
MatrixTuple base_point_tuple(const AutJet& jet);
/// Whether the defining pencil at b is positive definite.
bool base_point_inside(const AutJet& jet, const PencilContext& ctx, double eps = 1e-12);

/// B_0 = L(b): the defining pencil evaluated at the base point (4s x 4s).
/// Throws std::domain_error when b is outside the level-one set.
Matrix build_B0(const AutJet& jet, const PencilContext& ctx);

/// Y_j = sum_k l_{k,j} R_k (transposed index pattern).
MatrixTuple build_Y(const AutJet& jet, const PencilContext& ctx);

/// B_j = B_0^{-1/2} Y_j B_0^{-1/2}.
MatrixTuple build_B(const AutJet& jet, const PencilContext& ctx);

/// The 8x8 0/1 shuffle matrix with columns e_a -> e_{sigma(a)},
/// sigma = (1,3,5,7,2,4,6,8).
Matrix shuffle_permutation8();
/// Same, tensored with I_s.
Matrix shuffle_permutation(Eigen::Index s);

/**
 * Frobenius deviation of the shuffled pencil identity: the defining pencil
 * of phi(S (x) X), with phi_j(S (x) X) = [[b_j I, sum_k l_jk X_k], [0, b_j I]],
 * reordered to the (4-block)(x)(shift)(x)(s)(x)(n) factorization and
 * conjugated by the shuffle, must equal [[B_0 (x) I_n, Lambda_Y(X)],
 * [Lambda_Y(X)*, B_0 (x) I_n]].  Algebraic identity: residual ~ 0 for every
 * jet with b inside, whether or not it extends to an automorphism.
 */
double shuffle_identity_residual(const AutJet& jet, const PencilContext& ctx, const MatrixTuple& x);
/// Same with a caller-supplied 8x8 shuffle (negative controls).
double shuffle_identity_residual(const AutJet& jet, const PencilContext& ctx, const MatrixTuple& x,
                                 const Matrix& sigma8);

/**
 * Samples tuples at the given levels and compares membership in B_B against
 * membership in B_E; for jets of genuine automorphisms the two balls agree,
 * so a disagreement outside the margin band refutes the jet.  Witnesses are
 * re-verified through an independent Gram-eigenvalue route before being
 * reported.
 */
struct BallAgreementReport {
    int trials = 0;
    int agreements = 0;
    int band_skipped = 0;
    bool witness_found = false;
    int witness_trial = -1;
    Eigen::Index witness_level = 0;
    MatrixTuple witness_x;
    double witness_margin_B = 0, witness_margin_E = 0;
};
BallAgreementReport ball_agreement_probe(const AutJet& jet, const PencilContext& ctx,
                                         const std::vector<Eigen::Index>& levels, int trials,
                                         std::uint64_t seed, double eps = 1e-7);

/// Frobenius norm of LHS - RHS in the first-order compatibility identity
///   -[l11 l12* C2^{-1}C2^{-*} + l21 l22* C1^{-1}C1^{-*}]
///     = (l11 b2 - l21 b1)(-l12 b2 + l22 b1)* I_s,
/// a necessary condition on jets of automorphisms.  Requires invertible C.
double jet_compatibility_residual(const AutJet& jet, const PencilContext& ctx);

enum class JetVerdict { trivial, violates_necessary_conditions, undetermined };
const char* to_string(JetVerdict v);

/// classify_jet outcome: the first violated necessary condition (by name)
/// or trivial / undetermined.
struct JetClassification {
    JetVerdict verdict;
    std::string failed_condition;  // empty unless a violation was found
    double detail = 0.0;           // magnitude that triggered the violation
};

/**
 * Syntactically trivial jets (b = 0, L diagonal or antidiagonal with
 * unimodular entries) are reported trivial.  Otherwise the necessary
 * conditions are evaluated in order -- b1 b2* = 0 (s > 1), the zero-pattern
 * dichotomy (s > 1), the first-order compatibility residual, L* L = I,
 * l11 l21 = 0 and l12 l22 = 0 -- and the first violation is reported;
 * passing all of them yields undetermined.
 */
JetClassification classify_jet(const AutJet& jet, const PencilContext& ctx, double eps = 1e-7);

}  // namespace freespec
