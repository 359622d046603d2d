#include "freespec/cstar.hpp"

#include <algorithm>
#include <cmath>

namespace freespec {

namespace {

Complex trace_inner(const Matrix& a, const Matrix& b) { return (a.adjoint() * b).trace(); }

// Twice-orthogonalized Gram-Schmidt append; returns true when m enlarged the
// span.  Rank decision at relative tolerance eps.
bool gs_append(std::vector<Matrix>& basis, const Matrix& m, double eps) {
    const double scale = m.norm();
    if (scale == 0.0) return false;
    Matrix r = m;
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) r -= trace_inner(b, r) * b;
    if (r.norm() <= eps * scale) return false;
    basis.push_back(r / r.norm());
    return true;
}

}  // namespace

Matrix AlgebraBasis::project(const Matrix& m) const {
    Matrix p = Matrix::Zero(n, n);
    for (const auto& b : basis) p += trace_inner(b, m) * b;
    return p;
}

double AlgebraBasis::span_residual(const Matrix& m) const {
    const double scale = m.norm();
    if (scale == 0.0) return 0.0;
    return (m - project(m)).norm() / scale;
}

bool AlgebraBasis::contains(const Matrix& m, double tol) const { return span_residual(m) <= tol; }

AlgebraBasis generated_star_algebra(Eigen::Index n, const std::vector<Matrix>& gens, double eps) {
    for (const auto& g : gens)
        if (g.rows() != n || g.cols() != n)
            throw std::invalid_argument("generated_star_algebra: generator size mismatch");

    std::vector<Matrix> letters;
    for (const auto& g : gens) {
        letters.push_back(g);
        letters.push_back(g.adjoint());
    }

    AlgebraBasis alg;
    alg.n = n;
    gs_append(alg.basis, Matrix::Identity(n, n), eps);
    for (const auto& l : letters) gs_append(alg.basis, l, eps);

    // Right-multiplying a spanning set that contains I by the letters
    // reaches every word; dimension strictly grows until stable.
    const int cap = static_cast<int>(n * n);
    for (int round = 0; round < cap; ++round) {
        bool grew = false;
        const size_t snapshot = alg.basis.size();
        for (size_t i = 0; i < snapshot; ++i)
            for (const auto& l : letters) grew |= gs_append(alg.basis, alg.basis[i] * l, eps);
        if (!grew) break;
    }
    return alg;
}

AlgebraBasis commutant(Eigen::Index n, const std::vector<Matrix>& gens, double eps) {
    AlgebraBasis out;
    out.n = n;
    if (gens.empty()) {
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                Matrix unit = Matrix::Zero(n, n);
                unit(i, j) = 1;
                out.basis.push_back(unit);
            }
        return out;
    }
    for (const auto& g : gens)
        if (g.rows() != n || g.cols() != n)
            throw std::invalid_argument("commutant: generator size mismatch");

    // vec(KA - AK) = (A^T (x) I - I (x) A) vec(K), column-major vec.
    const Eigen::Index nn = n * n;
    Matrix stacked(2 * static_cast<Eigen::Index>(gens.size()) * nn, nn);
    const Matrix eye = Matrix::Identity(n, n);
    Eigen::Index row = 0;
    for (const auto& g : gens) {
        stacked.middleRows(row, nn) = kron(g.transpose(), eye) - kron(eye, g);
        row += nn;
        const Matrix ga = g.adjoint();
        stacked.middleRows(row, nn) = kron(ga.transpose(), eye) - kron(eye, ga);
        row += nn;
    }
    const double scale = std::max(1.0, op_norm(stacked));
    for (const auto& v : kernel_basis(stacked, eps * scale)) {
        Matrix k(n, n);
        for (Eigen::Index j = 0; j < n; ++j) k.col(j) = v.segment(j * n, n);
        out.basis.push_back(k);
    }
    return out;
}

std::vector<Matrix> reducing_projections(const AlgebraBasis& alg, double gap) {
    const Eigen::Index n = alg.n;
    std::vector<Matrix> hermitians;
    Matrix generic = Matrix::Zero(n, n);
    double weight = 1.0;
    for (const auto& k : alg.basis) {
        const Matrix h = 0.5 * (k + k.adjoint());
        const Matrix a = Complex(0, -0.5) * (k - k.adjoint());
        if (h.norm() > 1e-12) hermitians.push_back(h);
        if (a.norm() > 1e-12) hermitians.push_back(a);
        weight *= 1.6180339887498949;  // irrational spread keeps the combo generic
        generic += weight * h + (weight * 0.7548776662466927) * a;
    }
    if (generic.norm() > 1e-12) hermitians.push_back(generic);

    std::vector<Matrix> found;
    found.push_back(Matrix::Zero(n, n));
    found.push_back(Matrix::Identity(n, n));
    auto add_unique = [&](const Matrix& p) {
        for (const auto& q : found)
            if ((p - q).norm() <= 1e-7 * static_cast<double>(n)) return;
        found.push_back(p);
    };

    for (const auto& h : hermitians) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(h);
        const Eigen::VectorXd ev = es.eigenvalues();
        Eigen::Index lo = 0;
        std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;
        for (Eigen::Index i = 1; i <= ev.size(); ++i) {
            if (i == ev.size() || ev(i) - ev(i - 1) > gap) {
                clusters.emplace_back(lo, i);
                lo = i;
            }
        }
        if (clusters.size() < 2) continue;
        for (auto [a, b] : clusters) {
            const Matrix v = es.eigenvectors().middleCols(a, b - a);
            add_unique(v * v.adjoint());
        }
    }

    std::sort(found.begin(), found.end(), [](const Matrix& a, const Matrix& b) {
        const double ta = a.real().trace(), tb = b.real().trace();
        if (std::abs(ta - tb) > 0.5) return ta < tb;
        for (Eigen::Index i = 0; i < a.size(); ++i) {
            const double da = std::abs(*(a.data() + i)), db = std::abs(*(b.data() + i));
            if (std::abs(da - db) > 1e-9) return da < db;
        }
        return false;
    });
    return found;
}

HypothesesReport check_hypotheses(const PencilContext& ctx, double eps) {
    HypothesesReport rep;
    rep.c1_sigma_min = ctx.c1_sigma_min;
    rep.c2_sigma_min = ctx.c2_sigma_min;
    rep.c1_invertible = ctx.c1_sigma_min > eps;
    rep.c2_invertible = ctx.c2_sigma_min > eps;

    const Matrix row_sum = ctx.C1.adjoint() * ctx.C1 + ctx.C2.adjoint() * ctx.C2;
    const Matrix col_sum = ctx.C1 * ctx.C1.adjoint() + ctx.C2 * ctx.C2.adjoint();

    const auto row_alg =
        generated_star_algebra(ctx.s, {ctx.C1.adjoint() * ctx.C1, ctx.C2.adjoint() * ctx.C2}, eps);
    const auto col_alg =
        generated_star_algebra(ctx.s, {ctx.C1 * ctx.C1.adjoint(), ctx.C2 * ctx.C2.adjoint()}, eps);
    rep.row_dim = row_alg.dimension();
    rep.col_dim = col_alg.dimension();
    rep.row_generates = rep.row_dim == static_cast<int>(ctx.s * ctx.s);
    rep.col_generates = rep.col_dim == static_cast<int>(ctx.s * ctx.s);

    const Matrix eye = Matrix::Identity(ctx.s, ctx.s);
    rep.row_sum_lambda_max = herm_max_eig(row_sum);
    rep.col_sum_lambda_max = herm_max_eig(col_sum);
    rep.row_sum_min_eig = herm_min_eig(row_sum - eye);
    rep.col_sum_min_eig = herm_min_eig(col_sum - eye);
    rep.row_sum_exceeds_one = rep.row_sum_lambda_max > 1.0;
    rep.col_sum_exceeds_one = rep.col_sum_lambda_max > 1.0;
    return rep;
}

}  // namespace freespec
