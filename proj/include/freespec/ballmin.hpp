#pragma once

#include "freespec/cstar.hpp"
#include "freespec/freesets.hpp"

#include <array>
#include <optional>

namespace freespec {

/// H_j = [[0, G_j], [0, 0]] of size (d+e); B_G = D_H.
MatrixTuple embed_ball(const MatrixTuple& g);

/**
 * The matrix-unit tuple F in M_6 (x) M_s:
 *   F_1 = (E_12 + E_56) (x) C_1,  F_2 = (E_13 + E_46) (x) C_2.
 * F is unitarily equivalent to embed_ball(make_E(ctx)) by a permutation of
 * the six block coordinates; block_perm[a] is the block of embed_ball(E)
 * that block a of F corresponds to (F_j = P* H_j P with P e_a = e_perm[a]).
 */
struct FWithPermutation {
    MatrixTuple F;
    std::array<int, 6> block_perm;
};
FWithPermutation build_F(const PencilContext& ctx);

/**
 * Ball-minimality certificate for E, following the reducing-subspace
 * argument: the *-algebra generated by {F_1, F_2} must be the full two-block
 * algebra (dimension 18 s^2), its commutant must be 2-dimensional with
 * reducing projections exactly {0, I, I_3s (+) 0, 0 (+) I_3s}, and the two
 * separating witnesses must split the factor balls.
 */
struct BallMinimalCertificate {
    bool hypotheses_ok = false;
    HypothesesReport hypotheses;
    int algebra_dim = 0;
    int expected_dim = 0;
    int commutant_dim = 0;
    std::vector<Matrix> projections;
    bool projections_match = false;
    double rho_row = 0, rho_col = 0;
    Classification row_witness_in, row_witness_out;  // in B_{E^r}, out of B_{E^c}
    Classification col_witness_in, col_witness_out;  // in B_{E^c}, out of B_{E^r}
    bool witnesses_ok = false;
    bool certified = false;
};
BallMinimalCertificate ball_minimality_certificate(const PencilContext& ctx, double eps = 1e-8);

/**
 * Necessary-condition probe for two-sided unitary equivalence F = V* G U:
 * traces of every word in the letters {G_i G_j*} (and {G_i* G_j}) must agree
 * between the two tuples for all word lengths up to maxlen (default
 * 2 (d+e)^2).  Mismatch proves the tuples distinct; agreement is reported as
 * consistent-up-to-maxlen and is not conclusive.
 *
 * Words are enumerated directly while the count is small (exact per-word
 * eps semantics and concrete witness words).  Longer lengths are settled by
 * the tensor-power identity
 *   sum_{|w|=m} |tr w(G-letters) - tr w(F-letters)|^2
 *     = tr(A_gg^m) - tr(A_gf^m) - tr(A_fg^m) + tr(A_ff^m),
 * A_xy = sum_l x_l (x) conj(y_l); each power-trace sequence satisfies its
 * characteristic-polynomial recurrence, so vanishing over 4 sz^2 consecutive
 * lengths decides every remaining length.  The aggregate test carries a
 * numerical floor ~sqrt(1e-11 m), documented here rather than hidden.
 */
struct BallEquivalenceReport {
    enum class Verdict { distinct, consistent_up_to_maxlen };
    Verdict verdict = Verdict::consistent_up_to_maxlen;
    int maxlen = 0;
    double max_mismatch = 0.0;
    // set when a concrete word was found by direct enumeration;
    // letters are pairs (i, j) for G_i G_j* (side 0) or G_i* G_j (side 1)
    std::optional<std::vector<std::pair<int, int>>> witness_word;
    int witness_side = -1;     // 0 = row letters, 1 = column letters
    int mismatch_length = -1;  // word length at which the mismatch appeared
};
BallEquivalenceReport ball_equivalence_probe(const MatrixTuple& g, const MatrixTuple& f,
                                             int maxlen = -1, double eps = 1e-8);

/// Orthonormal basis of the joint kernel of the entries of B.
std::vector<Vector> kernel_intersection(const MatrixTuple& b, double eps = 1e-8);

}  // namespace freespec
