#include "freespec/autanalysis.hpp"

#include <cmath>

namespace freespec {

MatrixTuple base_point_tuple(const AutJet& jet) {
    return MatrixTuple{Matrix::Constant(1, 1, jet.b[0]), Matrix::Constant(1, 1, jet.b[1])};
}

bool base_point_inside(const AutJet& jet, const PencilContext& ctx, double eps) {
    return herm_min_eig(defining_pencil(ctx, base_point_tuple(jet))) > eps;
}

namespace {

void require_jet(const AutJet& jet, const PencilContext& ctx) {
    if (jet.L.rows() != 2 || jet.L.cols() != 2)
        throw std::invalid_argument("jet: L must be 2x2");
    if (!base_point_inside(jet, ctx))
        throw std::domain_error("jet: base point lies outside the level-one set");
}

}  // namespace

Matrix build_B0(const AutJet& jet, const PencilContext& ctx) {
    require_jet(jet, ctx);
    return defining_pencil(ctx, base_point_tuple(jet));
}

MatrixTuple build_Y(const AutJet& jet, const PencilContext& ctx) {
    if (jet.L.rows() != 2 || jet.L.cols() != 2)
        throw std::invalid_argument("jet: L must be 2x2");
    const MatrixTuple r = make_R(ctx);
    std::vector<Matrix> out;
    for (int j = 0; j < 2; ++j) out.push_back(jet.L(0, j) * r[0] + jet.L(1, j) * r[1]);
    return MatrixTuple(std::move(out));
}

MatrixTuple build_B(const AutJet& jet, const PencilContext& ctx) {
    const Matrix w = inv_sqrt_posdef(build_B0(jet, ctx));
    const MatrixTuple y = build_Y(jet, ctx);
    std::vector<Matrix> out;
    for (int j = 0; j < 2; ++j) out.push_back(w * y[j] * w);
    return MatrixTuple(std::move(out));
}

Matrix shuffle_permutation8() {
    constexpr int image[8] = {0, 2, 4, 6, 1, 3, 5, 7};
    Matrix p = Matrix::Zero(8, 8);
    for (int a = 0; a < 8; ++a) p(image[a], a) = 1;
    return p;
}

Matrix shuffle_permutation(Eigen::Index s) {
    return kron(shuffle_permutation8(), Matrix::Identity(s, s));
}

namespace {

// Commutation matrix K with K (u (x) v) = v (x) u for u of size p, v of
// size q; indices (i, j) |-> (j, i).
Matrix commutation_matrix(Eigen::Index p, Eigen::Index q) {
    Matrix k = Matrix::Zero(p * q, p * q);
    for (Eigen::Index i = 0; i < p; ++i)
        for (Eigen::Index j = 0; j < q; ++j) k(j * p + i, i * q + j) = 1;
    return k;
}

}  // namespace

double shuffle_identity_residual(const AutJet& jet, const PencilContext& ctx, const MatrixTuple& x,
                                 const Matrix& sigma8) {
    require_jet(jet, ctx);
    if (x.g() != 2 || !x.square())
        throw std::invalid_argument("shuffle_identity_residual: expected a square 2-tuple");
    const Eigen::Index s = ctx.s, n = x.rows();

    // phi_j(S (x) X) = [[b_j I, sum_k l_jk X_k], [0, b_j I]]
    std::vector<Matrix> phi;
    for (int j = 0; j < 2; ++j) {
        Matrix z = Matrix::Zero(2 * n, 2 * n);
        z.topLeftCorner(n, n) = jet.b[j] * Matrix::Identity(n, n);
        z.bottomRightCorner(n, n) = jet.b[j] * Matrix::Identity(n, n);
        z.topRightCorner(n, n) = jet.L(j, 0) * x[0] + jet.L(j, 1) * x[1];
        phi.push_back(std::move(z));
    }
    const Matrix lhs0 = defining_pencil(ctx, MatrixTuple(std::move(phi)));

    // reorder (4)(x)(s)(x)(2)(x)(n) -> (4)(x)(2)(x)(s)(x)(n), then shuffle
    const Matrix reorder =
        kron(Matrix::Identity(4, 4), kron(commutation_matrix(s, 2), Matrix::Identity(n, n)));
    const Matrix sig = kron(sigma8, Matrix::Identity(s * n, s * n));
    const Matrix lhs = sig.adjoint() * reorder * lhs0 * reorder.transpose() * sig;

    const Matrix b0n = kron(build_B0(jet, ctx), Matrix::Identity(n, n));
    const Matrix lam = lambda_pencil(build_Y(jet, ctx), x);
    Matrix rhs(8 * s * n, 8 * s * n);
    rhs.topLeftCorner(4 * s * n, 4 * s * n) = b0n;
    rhs.topRightCorner(4 * s * n, 4 * s * n) = lam;
    rhs.bottomLeftCorner(4 * s * n, 4 * s * n) = lam.adjoint();
    rhs.bottomRightCorner(4 * s * n, 4 * s * n) = b0n;
    return (lhs - rhs).norm();
}

double shuffle_identity_residual(const AutJet& jet, const PencilContext& ctx, const MatrixTuple& x) {
    return shuffle_identity_residual(jet, ctx, x, shuffle_permutation8());
}

namespace {

// Second route for margins, independent of op_norm's Gram path: full
// Jacobi SVD of the pencil value.
double ball_margin_svd(const MatrixTuple& g, const MatrixTuple& x) {
    Eigen::JacobiSVD<Matrix> svd(lambda_pencil(g, x));
    return 1.0 - svd.singularValues()(0);
}

}  // namespace

BallAgreementReport ball_agreement_probe(const AutJet& jet, const PencilContext& ctx,
                                         const std::vector<Eigen::Index>& levels, int trials,
                                         std::uint64_t seed, double eps) {
    require_jet(jet, ctx);
    if (levels.empty()) throw std::invalid_argument("ball_agreement_probe: need at least one level");
    const MatrixTuple b = build_B(jet, ctx);
    const MatrixTuple e = make_E(ctx);

    std::vector<BalancedSampler> samplers;
    for (size_t li = 0; li < levels.size(); ++li)
        samplers.emplace_back(
            2, levels[li], [&](const MatrixTuple& t) { return spectraball_margin(e, t); },
            derive_seed(seed, "ball-agree-calibrate", li));

    BallAgreementReport rep;
    for (int i = 0; i < trials; ++i) {
        ++rep.trials;
        const size_t li = i % levels.size();
        Rng rng(derive_seed(seed, "ball-agree", i));
        const MatrixTuple x = samplers[li].draw(rng);
        const double mb = spectraball_margin(b, x);
        const double me = spectraball_margin(e, x);
        if (std::abs(mb) <= eps || std::abs(me) <= eps) {
            ++rep.band_skipped;
            continue;
        }
        if ((mb > 0) == (me > 0)) {
            ++rep.agreements;
            continue;
        }
        // re-verify through the SVD route at a 10x tighter band
        const double mb2 = ball_margin_svd(b, x);
        const double me2 = ball_margin_svd(e, x);
        const double band = eps / 10.0;
        if (std::abs(mb2) > band && std::abs(me2) > band && (mb2 > 0) == (mb > 0) &&
            (me2 > 0) == (me > 0)) {
            rep.witness_found = true;
            rep.witness_trial = i;
            rep.witness_level = levels[li];
            rep.witness_x = x;
            rep.witness_margin_B = mb;
            rep.witness_margin_E = me;
            break;
        }
        ++rep.band_skipped;
    }
    return rep;
}

double jet_compatibility_residual(const AutJet& jet, const PencilContext& ctx) {
    if (!ctx.invertible()) throw singular_matrix(std::min(ctx.c1_sigma_min, ctx.c2_sigma_min));
    const Matrix c1i = inverse(ctx.C1);
    const Matrix c2i = inverse(ctx.C2);
    const Complex l11 = jet.L(0, 0), l12 = jet.L(0, 1), l21 = jet.L(1, 0), l22 = jet.L(1, 1);
    const Matrix lhs = -(l11 * std::conj(l12) * c2i * c2i.adjoint() +
                         l21 * std::conj(l22) * c1i * c1i.adjoint());
    const Complex factor =
        (l11 * jet.b[1] - l21 * jet.b[0]) * std::conj(-l12 * jet.b[1] + l22 * jet.b[0]);
    const Matrix rhs = factor * Matrix::Identity(ctx.s, ctx.s);
    return (lhs - rhs).norm();
}

const char* to_string(JetVerdict v) {
    switch (v) {
        case JetVerdict::trivial: return "trivial";
        case JetVerdict::violates_necessary_conditions: return "violates-necessary-conditions";
        case JetVerdict::undetermined: return "undetermined";
    }
    return "?";
}

JetClassification classify_jet(const AutJet& jet, const PencilContext& ctx, double eps) {
    const Complex l11 = jet.L(0, 0), l12 = jet.L(0, 1), l21 = jet.L(1, 0), l22 = jet.L(1, 1);
    const double unimod_tol = 1e-9;
    const bool b_zero = std::abs(jet.b[0]) <= eps && std::abs(jet.b[1]) <= eps;
    const bool diag_unimodular = std::abs(l12) <= eps && std::abs(l21) <= eps &&
                                 std::abs(std::abs(l11) - 1) <= unimod_tol &&
                                 std::abs(std::abs(l22) - 1) <= unimod_tol;
    const bool antidiag_unimodular = std::abs(l11) <= eps && std::abs(l22) <= eps &&
                                     std::abs(std::abs(l12) - 1) <= unimod_tol &&
                                     std::abs(std::abs(l21) - 1) <= unimod_tol;
    if (b_zero && (diag_unimodular || antidiag_unimodular))
        return {JetVerdict::trivial, "", 0.0};

    if (ctx.s > 1) {
        const double b1b2 = std::abs(jet.b[0] * std::conj(jet.b[1]));
        if (b1b2 > eps)
            return {JetVerdict::violates_necessary_conditions, "b1-b2star-nonzero", b1b2};
        const bool off_zero = std::abs(l12) <= eps && std::abs(l21) <= eps;
        const bool diag_zero = std::abs(l11) <= eps && std::abs(l22) <= eps;
        if (!off_zero && !diag_zero) {
            const double detail = std::min(std::max(std::abs(l12), std::abs(l21)),
                                           std::max(std::abs(l11), std::abs(l22)));
            return {JetVerdict::violates_necessary_conditions, "zero-pattern-dichotomy", detail};
        }
    }

    const double pres = jet_compatibility_residual(jet, ctx);
    if (pres > eps)
        return {JetVerdict::violates_necessary_conditions, "first-order-compatibility", pres};

    const double unitarity = (jet.L.adjoint() * jet.L - Matrix::Identity(2, 2)).norm();
    if (unitarity > eps)
        return {JetVerdict::violates_necessary_conditions, "L-not-unitary", unitarity};

    const double col1 = std::abs(l11 * l21), col2 = std::abs(l12 * l22);
    if (col1 > eps || col2 > eps)
        return {JetVerdict::violates_necessary_conditions, "column-products-nonzero",
                std::max(col1, col2)};

    return {JetVerdict::undetermined, "", 0.0};
}

}  // namespace freespec
