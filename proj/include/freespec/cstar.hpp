#pragma once

#include "freespec/freesets.hpp"
#include "freespec/linalg.hpp"

#include <vector>

namespace freespec {

/**
 * Orthonormal basis (trace inner product <A,B> = tr(A* B)) of a unital
 * *-subalgebra of M_n.  Invariants: contains the identity, closed under
 * adjoint and multiplication within span tolerance, dimension <= n^2.
 */
struct AlgebraBasis {
    Eigen::Index n = 0;
    std::vector<Matrix> basis;

    int dimension() const { return static_cast<int>(basis.size()); }
    /// Orthogonal projection of m onto the span.
    Matrix project(const Matrix& m) const;
    /// Distance from m to the span, relative to ||m||.
    double span_residual(const Matrix& m) const;
    bool contains(const Matrix& m, double tol = 1e-8) const;
};

/// Basis of the smallest unital *-subalgebra containing gens, by iterated
/// right multiplication with gens and adjoints plus re-orthonormalization.
/// At finite dimension this is the generated C*-algebra.
AlgebraBasis generated_star_algebra(Eigen::Index n, const std::vector<Matrix>& gens,
                                    double eps = 1e-8);

/// {K : K A = A K and K A* = A* K for all A in gens}, computed as the null
/// space of the stacked commutator maps; equals the commutant of the
/// generated *-algebra.  Empty gens give all of M_n.
AlgebraBasis commutant(Eigen::Index n, const std::vector<Matrix>& gens, double eps = 1e-8);

/// Orthogonal projections in the span of an algebra basis, found by
/// eigendecomposing Hermitian elements and keeping spectral projections
/// across eigenvalue gaps > gap; always includes 0 and I.  Deduplicated,
/// sorted by rank then entries.
std::vector<Matrix> reducing_projections(const AlgebraBasis& alg, double gap = 1e-6);

/// Invertibility, two-sided generation, and the eigenvalue facts about
/// C1*C1 + C2*C2 (row) and C1C1* + C2C2* (col) that the triviality
/// analysis assumes.
struct HypothesesReport {
    double c1_sigma_min = 0, c2_sigma_min = 0;
    bool c1_invertible = false, c2_invertible = false;
    int row_dim = 0, col_dim = 0;  // dims of algebra({C1*C1, C2*C2}), algebra({C1C1*, C2C2*})
    bool row_generates = false, col_generates = false;
    double row_sum_lambda_max = 0, col_sum_lambda_max = 0;  // of the sums
    double row_sum_min_eig = 0, col_sum_min_eig = 0;        // of sum - I
    bool row_sum_exceeds_one = false, col_sum_exceeds_one = false;            // lambda_max > 1

    bool all_pass() const {
        return c1_invertible && c2_invertible && row_generates && col_generates && row_sum_exceeds_one &&
               col_sum_exceeds_one;
    }
};

HypothesesReport check_hypotheses(const PencilContext& ctx, double eps = 1e-8);

}  // namespace freespec
