#include "freespec/freesets.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>

namespace freespec {

MatrixTuple::MatrixTuple(std::vector<Matrix> entries) : entries_(std::move(entries)) {
    for (const auto& m : entries_)
        if (m.rows() != rows() || m.cols() != cols())
            throw std::invalid_argument("MatrixTuple: entries must share one shape");
}

MatrixTuple::MatrixTuple(std::initializer_list<Matrix> entries)
    : MatrixTuple(std::vector<Matrix>(entries)) {}

MatrixTuple MatrixTuple::zero(int g, Eigen::Index rows, Eigen::Index cols) {
    return MatrixTuple(std::vector<Matrix>(g, Matrix::Zero(rows, cols)));
}

MatrixTuple MatrixTuple::scaled(Complex t) const {
    std::vector<Matrix> out;
    out.reserve(entries_.size());
    for (const auto& m : entries_) out.push_back(t * m);
    return MatrixTuple(std::move(out));
}

MatrixTuple tuple_direct_sum(const MatrixTuple& x, const MatrixTuple& y) {
    if (x.g() != y.g()) throw std::invalid_argument("tuple_direct_sum: variable count mismatch");
    std::vector<Matrix> out;
    for (int j = 0; j < x.g(); ++j) out.push_back(direct_sum(x[j], y[j]));
    return MatrixTuple(std::move(out));
}

MatrixTuple unitary_conj(const Matrix& u, const MatrixTuple& x) {
    std::vector<Matrix> out;
    for (int j = 0; j < x.g(); ++j) out.push_back(u.adjoint() * x[j] * u);
    return MatrixTuple(std::move(out));
}

MatrixTuple left_mult(const Matrix& u, const MatrixTuple& x) {
    std::vector<Matrix> out;
    for (int j = 0; j < x.g(); ++j) out.push_back(u * x[j]);
    return MatrixTuple(std::move(out));
}

MatrixTuple two_sided(const Matrix& v, const MatrixTuple& x, const Matrix& u) {
    std::vector<Matrix> out;
    for (int j = 0; j < x.g(); ++j) out.push_back(v.adjoint() * x[j] * u);
    return MatrixTuple(std::move(out));
}

Matrix row_matrix(const MatrixTuple& x) {
    Matrix out(x.rows(), x.cols() * x.g());
    for (int j = 0; j < x.g(); ++j) out.middleCols(j * x.cols(), x.cols()) = x[j];
    return out;
}

MatrixTuple gaussian_tuple(Rng& rng, int g, Eigen::Index n) {
    std::vector<Matrix> out;
    for (int j = 0; j < g; ++j) out.push_back(rng.gaussian(n, n));
    return MatrixTuple(std::move(out));
}

FreePolynomial::FreePolynomial(int g, Eigen::Index coeff_rows, Eigen::Index coeff_cols)
    : g_(g), d_(coeff_rows), e_(coeff_cols) {
    if (g < 1 || coeff_rows < 1 || coeff_cols < 1)
        throw std::invalid_argument("FreePolynomial: bad dimensions");
}

FreePolynomial FreePolynomial::scalar(int g) { return FreePolynomial(g, 1, 1); }

void FreePolynomial::add_term(const Word& w, const Matrix& coeff) {
    if (coeff.rows() != d_ || coeff.cols() != e_)
        throw std::invalid_argument("FreePolynomial: coefficient shape mismatch");
    for (int letter : w)
        if (letter < 0 || letter >= g_) throw std::invalid_argument("FreePolynomial: letter out of range");
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        if (coeff.norm() != 0.0) terms_.emplace(w, coeff);
        return;
    }
    it->second += coeff;
    if (it->second.norm() == 0.0) terms_.erase(it);
}

void FreePolynomial::add_term(const Word& w, Complex coeff) {
    add_term(w, coeff * Matrix::Ones(d_, e_));
}

int FreePolynomial::degree() const {
    int deg = 0;
    for (const auto& [w, c] : terms_) deg = std::max(deg, static_cast<int>(w.size()));
    return deg;
}

Matrix eval_word(const MatrixTuple& x, const Word& w) {
    if (!x.square()) throw std::invalid_argument("eval_word: tuple must be square");
    Matrix out = Matrix::Identity(x.rows(), x.rows());
    for (int letter : w) {
        if (letter < 0 || letter >= x.g()) throw std::invalid_argument("eval_word: letter out of range");
        out = out * x[letter];
    }
    return out;
}

Matrix eval_poly(const FreePolynomial& p, const MatrixTuple& x) {
    if (!x.square()) throw std::invalid_argument("eval_poly: tuple must be square");
    if (p.g() != x.g()) throw std::invalid_argument("eval_poly: variable count mismatch");
    const Eigen::Index n = x.rows();
    Matrix out = Matrix::Zero(p.coeff_rows() * n, p.coeff_cols() * n);
    for (const auto& [w, coeff] : p.terms()) out += kron(coeff, eval_word(x, w));
    return out;
}

Matrix lambda_pencil(const MatrixTuple& a, const MatrixTuple& x) {
    if (a.g() != x.g()) throw std::invalid_argument("lambda_pencil: variable count mismatch");
    if (!x.square()) throw std::invalid_argument("lambda_pencil: point tuple must be square");
    Matrix out = Matrix::Zero(a.rows() * x.rows(), a.cols() * x.rows());
    for (int j = 0; j < a.g(); ++j) out += kron(a[j], x[j]);
    return out;
}

Matrix monic_pencil(const MatrixTuple& a, const MatrixTuple& x) {
    if (!a.square()) throw std::invalid_argument("monic_pencil: coefficient tuple must be square");
    const Matrix lam = lambda_pencil(a, x);
    return Matrix::Identity(lam.rows(), lam.cols()) + lam + lam.adjoint();
}

const char* to_string(Region r) {
    switch (r) {
        case Region::inside: return "inside";
        case Region::boundary_band: return "boundary-band";
        case Region::outside: return "outside";
    }
    return "?";
}

Classification classify_margin(double margin, double eps) {
    if (margin > eps) return {Region::inside, margin};
    if (margin < -eps) return {Region::outside, margin};
    return {Region::boundary_band, margin};
}

double spectrahedron_margin(const MatrixTuple& a, const MatrixTuple& x) {
    return herm_min_eig(monic_pencil(a, x));
}

double spectraball_margin(const MatrixTuple& g, const MatrixTuple& x) {
    return 1.0 - op_norm(lambda_pencil(g, x));
}

Classification in_spectrahedron(const MatrixTuple& a, const MatrixTuple& x, double eps) {
    return classify_margin(spectrahedron_margin(a, x), eps);
}

Classification in_spectraball(const MatrixTuple& g, const MatrixTuple& x, double eps) {
    return classify_margin(spectraball_margin(g, x), eps);
}

Classification in_row_ball(const MatrixTuple& x, double delta, double eps) {
    if (!x.square()) throw std::invalid_argument("in_row_ball: tuple must be square");
    Matrix gram = Matrix::Zero(x.rows(), x.rows());
    for (int j = 0; j < x.g(); ++j) gram += x[j] * x[j].adjoint();
    const Matrix m = delta * delta * Matrix::Identity(x.rows(), x.rows()) - gram;
    return classify_margin(herm_min_eig(m), eps);
}

PencilContext::PencilContext(Matrix c1, Matrix c2) : C1(std::move(c1)), C2(std::move(c2)) {
    if (C1.rows() != C1.cols() || C2.rows() != C2.cols() || C1.rows() != C2.rows())
        throw std::invalid_argument("PencilContext: C1, C2 must be square of equal size");
    s = C1.rows();
    const double n1 = op_norm(C1), n2 = op_norm(C2);
    if (n1 == 0.0 || n2 == 0.0) throw std::invalid_argument("PencilContext: C_j must be nonzero");
    C1 /= n1;
    C2 /= n2;
    c1_sigma_min = sigma_min(C1);
    c2_sigma_min = sigma_min(C2);
}

namespace {

// Zero tuple of the given block grid with C_j placed at the listed
// (block-row, block-col) positions.
Matrix place_blocks(const Matrix& c, Eigen::Index block_rows, Eigen::Index block_cols,
                    std::initializer_list<std::pair<int, int>> at) {
    const Eigen::Index s = c.rows();
    Matrix out = Matrix::Zero(block_rows * s, block_cols * s);
    for (auto [i, j] : at) out.block(i * s, j * s, s, s) = c;
    return out;
}

}  // namespace

MatrixTuple make_R(const PencilContext& ctx) {
    return MatrixTuple{place_blocks(ctx.C1, 4, 4, {{0, 1}, {2, 3}}),
                       place_blocks(ctx.C2, 4, 4, {{0, 2}, {1, 3}})};
}

MatrixTuple make_E(const PencilContext& ctx) {
    return MatrixTuple{place_blocks(ctx.C1, 3, 3, {{0, 0}, {2, 2}}),
                       place_blocks(ctx.C2, 3, 3, {{0, 1}, {1, 2}})};
}

MatrixTuple make_Er(const PencilContext& ctx) {
    return MatrixTuple{place_blocks(ctx.C1, 1, 2, {{0, 0}}), place_blocks(ctx.C2, 1, 2, {{0, 1}})};
}

MatrixTuple make_Ec(const PencilContext& ctx) {
    return MatrixTuple{place_blocks(ctx.C1, 2, 1, {{0, 0}}), place_blocks(ctx.C2, 2, 1, {{1, 0}})};
}

Matrix defining_pencil(const PencilContext& ctx, const MatrixTuple& x) {
    if (x.g() != 2) throw std::invalid_argument("defining_pencil: expected a 2-tuple");
    if (!x.square()) throw std::invalid_argument("defining_pencil: tuple must be square");
    const Eigen::Index b = ctx.s * x.rows();
    const Matrix y1 = kron(ctx.C1, x[0]);
    const Matrix y2 = kron(ctx.C2, x[1]);
    Matrix out = Matrix::Identity(4 * b, 4 * b);
    auto put = [&](int i, int j, const Matrix& m) {
        out.block(i * b, j * b, b, b) = m;
        out.block(j * b, i * b, b, b) = m.adjoint();
    };
    put(0, 1, y1);
    put(0, 2, y2);
    put(1, 3, y2);
    put(2, 3, y1);
    return out;
}

Matrix contraction_matrix(const PencilContext& ctx, const MatrixTuple& x) {
    if (x.g() != 2 || !x.square())
        throw std::invalid_argument("contraction_matrix: expected a square 2-tuple");
    const Eigen::Index b = ctx.s * x.rows();
    const Matrix y1 = kron(ctx.C1, x[0]);
    const Matrix y2 = kron(ctx.C2, x[1]);
    Matrix t(2 * b, 2 * b);
    t.topLeftCorner(b, b) = y1.adjoint();
    t.topRightCorner(b, b) = y2;
    t.bottomLeftCorner(b, b) = y2.adjoint();
    t.bottomRightCorner(b, b) = y1;
    return t;
}

bool QuadClassification::any_boundary_band() const {
    return via_pencil.region == Region::boundary_band ||
           via_contraction.region == Region::boundary_band ||
           via_left_defect.region == Region::boundary_band ||
           via_right_defect.region == Region::boundary_band;
}

bool QuadClassification::agree() const {
    return via_pencil.region == via_contraction.region &&
           via_pencil.region == via_left_defect.region &&
           via_pencil.region == via_right_defect.region;
}

QuadClassification membership_quad(const PencilContext& ctx, const MatrixTuple& x, double eps) {
    const Matrix t = contraction_matrix(ctx, x);
    const Matrix eye = Matrix::Identity(t.rows(), t.cols());
    QuadClassification q;
    q.via_pencil = classify_margin(herm_min_eig(defining_pencil(ctx, x)), eps);
    q.via_contraction = classify_margin(1.0 - op_norm(t), eps);
    q.via_left_defect = classify_margin(herm_min_eig(eye - t * t.adjoint()), eps);
    q.via_right_defect = classify_margin(herm_min_eig(eye - t.adjoint() * t), eps);
    return q;
}

Matrix rational_eval(const Realization& r, const MatrixTuple& x, double eps) {
    if (!r.A.square()) throw std::invalid_argument("rational_eval: state tuple must be square");
    if (r.c.size() != r.A.rows() || r.b.size() != r.A.rows())
        throw std::invalid_argument("rational_eval: vector length mismatch");
    const Eigen::Index n = x.rows();
    const Matrix lam = lambda_pencil(r.A, x);
    const Matrix res = Matrix::Identity(lam.rows(), lam.cols()) - lam;
    const double smin = sigma_min(res);
    if (smin <= eps * std::max(1.0, op_norm(res))) throw singular_matrix(smin);
    const Matrix bn = kron(Matrix(r.b), Matrix::Identity(n, n));
    const Matrix cn = kron(Matrix(r.c), Matrix::Identity(n, n));
    return cn.adjoint() * res.partialPivLu().solve(bn);
}

BalancedSampler::BalancedSampler(int g, Eigen::Index n, MarginFn margin,
                                 std::uint64_t calibration_seed)
    : g_(g), n_(n) {
    Rng rng(calibration_seed);
    std::vector<double> crossings;
    for (int k = 0; k < 9; ++k) {
        const MatrixTuple probe = gaussian_tuple(rng, g, n);
        auto at = [&](double t) { return margin(probe.scaled(t)); };
        double hi = 1.0;
        int guard = 0;
        while (at(hi) > 0 && ++guard < 60) hi *= 2;
        if (guard >= 60) continue;  // direction never leaves the set
        double lo = 0.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (at(mid) > 0 ? lo : hi) = mid;
        }
        crossings.push_back(0.5 * (lo + hi));
    }
    if (crossings.empty()) {
        scale_ = 1.0;
        return;
    }
    std::sort(crossings.begin(), crossings.end());
    scale_ = crossings[crossings.size() / 2];
}

MatrixTuple BalancedSampler::draw(Rng& rng) const {
    const MatrixTuple x = gaussian_tuple(rng, g_, n_);
    return x.scaled(scale_ * rng.uniform(0.4, 1.6));
}

CircularProbeReport circular_symmetry_probe(const MatrixTuple& a, int samples, std::uint64_t seed,
                                            double eps) {
    if (!a.square()) throw std::invalid_argument("circular_symmetry_probe: coefficients must be square");
    CircularProbeReport rep;
    const int g = a.g();
    const Eigen::Index levels[] = {1, 2, 3};
    auto margin = [&](const MatrixTuple& x) { return spectrahedron_margin(a, x); };

    std::vector<BalancedSampler> samplers;
    for (Eigen::Index n : levels)
        samplers.emplace_back(g, n, margin, derive_seed(seed, "circular-calibrate", n));

    for (int i = 0; i < samples; ++i) {
        ++rep.trials;
        Rng rng(derive_seed(seed, "circular-probe", i));
        const auto& sampler = samplers[i % 3];
        const MatrixTuple x = sampler.draw(rng);
        const double before = margin(x);
        if (before <= eps) continue;
        ++rep.inside_samples;
        const Matrix u = rng.unitary(x.rows());
        const MatrixTuple ux = left_mult(u, x);
        const double after = margin(ux);
        if (after < -eps) {
            rep.witness_found = true;
            rep.witness_trial = i;
            rep.witness_margin_before = before;
            rep.witness_margin_after = after;
            rep.witness_x = x;
            rep.witness_u = u;
            break;
        }
    }

    if (g == 2) {
        // rank-one diagonal candidate, interior-scaled, hit with the swap
        Matrix x1 = Matrix::Zero(2, 2), x2 = Matrix::Zero(2, 2);
        x1(0, 0) = 1;
        x2(1, 1) = 1;
        const MatrixTuple x0{x1, x2};
        auto at = [&](double t) { return margin(x0.scaled(t)); };
        double hi = 1.0;
        int guard = 0;
        while (at(hi) > 0 && ++guard < 60) hi *= 2;
        if (guard < 60) {
            double lo = 0.0;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                (at(mid) > 0 ? lo : hi) = mid;
            }
            const double tc = 0.5 * (lo + hi);
            const MatrixTuple xin = x0.scaled(0.999 * tc);
            Matrix u = Matrix::Zero(2, 2);
            u(0, 1) = 1;
            u(1, 0) = 1;
            rep.fixed_candidate_tested = true;
            rep.fixed_margin_before = margin(xin);
            rep.fixed_margin_after = margin(left_mult(u, xin));
            rep.fixed_candidate_is_witness = rep.fixed_margin_before > eps && rep.fixed_margin_after < -eps;
        }
    }
    return rep;
}

SeparatingWitnesses separating_witnesses(const PencilContext& ctx) {
    const double lam_row = herm_max_eig(ctx.C1.adjoint() * ctx.C1 + ctx.C2.adjoint() * ctx.C2);
    const double lam_col = herm_max_eig(ctx.C1 * ctx.C1.adjoint() + ctx.C2 * ctx.C2.adjoint());
    SeparatingWitnesses w;
    w.rho_row = std::min(std::sqrt(2.0 / (1.0 + lam_row)), 1.0 - 1e-9);
    w.rho_col = std::min(std::sqrt(2.0 / (1.0 + lam_col)), 1.0 - 1e-9);
    Matrix n01 = Matrix::Zero(2, 2), p11 = Matrix::Zero(2, 2), p00 = Matrix::Zero(2, 2);
    n01(0, 1) = 1;
    p11(1, 1) = 1;
    p00(0, 0) = 1;
    w.in_row_not_col = MatrixTuple{n01, p11}.scaled(w.rho_row);
    w.in_col_not_row = MatrixTuple{p00, n01}.scaled(w.rho_col);
    return w;
}

}  // namespace freespec
