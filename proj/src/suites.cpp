#include "freespec/suites.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

namespace freespec {

namespace {

// Deterministic trial runner: results land in index order regardless of the
// execution schedule.
template <typename T, typename Fn>
std::vector<T> run_trials(int count, bool parallel, Fn&& fn) {
    std::vector<T> out(count);
    if (!parallel || count < 2) {
        for (int i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    const unsigned workers = std::max(2u, std::thread::hardware_concurrency());
    std::vector<std::future<void>> futures;
    for (unsigned w = 0; w < workers; ++w) {
        futures.push_back(std::async(std::launch::async, [&, w] {
            for (int i = static_cast<int>(w); i < count; i += static_cast<int>(workers))
                out[i] = fn(i);
        }));
    }
    for (auto& f : futures) f.get();
    return out;
}

std::vector<Eigen::Index> levels_or(const RunConfig& cfg, std::vector<Eigen::Index> def) {
    return cfg.levels.empty() ? def : cfg.levels;
}

int samples_or(const RunConfig& cfg, int def) { return cfg.samples > 0 ? cfg.samples : def; }

// The execution schedule (parallel flag) is deliberately not part of the
// report: parallel and serial runs must serialize identically.
Json base_report(const std::string& suite, const PencilContext& ctx, const RunConfig& cfg) {
    return {{"suite", suite}, {"s", ctx.s}, {"eps", cfg.eps}, {"seed", cfg.seed}};
}

// ---------------------------------------------------------------- fp-alt --

SuiteResult suite_fp_alt(const PencilContext& ctx, const RunConfig& cfg) {
    const auto levels = levels_or(cfg, {1, 2, 3});
    const int samples = samples_or(cfg, 500);
    Json rep = base_report("fp-alt", ctx, cfg);
    rep["samples_per_level"] = samples;
    rep["levels"] = levels;

    int checked = 0, band_skipped = 0, disagreements = 0;
    Json first_disagreement;
    Json scales = Json::array();
    for (Eigen::Index n : levels) {
        BalancedSampler sampler(
            2, n, [&](const MatrixTuple& x) { return herm_min_eig(defining_pencil(ctx, x)); },
            derive_seed(cfg.seed, "fp-alt-calibrate", n));
        scales.push_back(sampler.scale());

        struct Trial {
            bool band = false, agree = true;
            Json quad;
        };
        auto trials = run_trials<Trial>(samples, cfg.parallel, [&](int i) {
            Rng rng(derive_seed(cfg.seed, "fp-alt", n * 1000003 + i));
            const MatrixTuple x = sampler.draw(rng);
            const auto quad = membership_quad(ctx, x, cfg.eps);
            Trial t;
            t.band = quad.any_boundary_band();
            t.agree = t.band || quad.agree();
            if (!t.agree) t.quad = quad_to_json(quad);
            return t;
        });
        for (const auto& t : trials) {
            if (t.band) {
                ++band_skipped;
            } else {
                ++checked;
                if (!t.agree) {
                    ++disagreements;
                    if (first_disagreement.is_null()) first_disagreement = t.quad;
                }
            }
        }
    }
    rep["sampler_scales"] = scales;
    rep["checked"] = checked;
    rep["band_skipped"] = band_skipped;
    rep["disagreements"] = disagreements;
    if (!first_disagreement.is_null()) rep["first_disagreement"] = first_disagreement;
    return {disagreements == 0, rep};
}

// ----------------------------------------------------------- ball-decomp --

SuiteResult suite_ball_decomp(const PencilContext& ctx, const RunConfig& cfg) {
    const auto levels = levels_or(cfg, {1, 2, 3});
    const int samples = samples_or(cfg, 500);
    Json rep = base_report("ball-decomp", ctx, cfg);
    rep["samples_per_level"] = samples;
    rep["levels"] = levels;

    const MatrixTuple e = make_E(ctx), er = make_Er(ctx), ec = make_Ec(ctx), r = make_R(ctx);
    int checked = 0, band_skipped = 0, factor_disagreements = 0, r_disagreements = 0;
    Json scales = Json::array();
    for (Eigen::Index n : levels) {
        BalancedSampler sampler(
            2, n, [&](const MatrixTuple& x) { return spectraball_margin(e, x); },
            derive_seed(cfg.seed, "ball-decomp-calibrate", n));
        scales.push_back(sampler.scale());

        struct Trial {
            bool band = false, factor_ok = true, r_ok = true;
        };
        auto trials = run_trials<Trial>(samples, cfg.parallel, [&](int i) {
            Rng rng(derive_seed(cfg.seed, "ball-decomp", n * 1000003 + i));
            const MatrixTuple x = sampler.draw(rng);
            const auto in_e = in_spectraball(e, x, cfg.eps);
            const auto in_er = in_spectraball(er, x, cfg.eps);
            const auto in_ec = in_spectraball(ec, x, cfg.eps);
            const auto in_r = in_spectraball(r, x, cfg.eps);
            Trial t;
            t.band = in_e.region == Region::boundary_band || in_er.region == Region::boundary_band ||
                     in_ec.region == Region::boundary_band || in_r.region == Region::boundary_band;
            if (!t.band) {
                t.factor_ok = in_e.inside() == (in_er.inside() && in_ec.inside());
                t.r_ok = in_e.inside() == in_r.inside();
            }
            return t;
        });
        for (const auto& t : trials) {
            if (t.band) {
                ++band_skipped;
                continue;
            }
            ++checked;
            if (!t.factor_ok) ++factor_disagreements;
            if (!t.r_ok) ++r_disagreements;
        }
    }

    const auto wit = separating_witnesses(ctx);
    const auto row_in = in_spectraball(er, wit.in_row_not_col, cfg.eps);
    const auto row_out = in_spectraball(ec, wit.in_row_not_col, cfg.eps);
    const auto col_in = in_spectraball(ec, wit.in_col_not_row, cfg.eps);
    const auto col_out = in_spectraball(er, wit.in_col_not_row, cfg.eps);
    const bool witnesses_ok = row_in.margin > 0.01 && row_out.margin < -0.01 &&
                              col_in.margin > 0.01 && col_out.margin < -0.01;

    rep["sampler_scales"] = scales;
    rep["checked"] = checked;
    rep["band_skipped"] = band_skipped;
    rep["factor_disagreements"] = factor_disagreements;
    rep["r_disagreements"] = r_disagreements;
    rep["rho_row"] = wit.rho_row;
    rep["rho_col"] = wit.rho_col;
    rep["witnesses"] = {{"row_in", classification_to_json(row_in)},
                        {"row_out", classification_to_json(row_out)},
                        {"col_in", classification_to_json(col_in)},
                        {"col_out", classification_to_json(col_out)}};
    rep["witnesses_ok"] = witnesses_ok;
    const bool pass = factor_disagreements == 0 && r_disagreements == 0 && witnesses_ok;
    return {pass, rep};
}

// ------------------------------------------------------------ not-a-ball --

SuiteResult suite_not_a_ball(const PencilContext& ctx, const RunConfig& cfg) {
    const int samples = samples_or(cfg, 1000);
    Json rep = base_report("not-a-ball", ctx, cfg);

    // boundary candidate (diag(1,0), diag(0,1)), rescaled to the boundary
    // through the contraction characterization
    Matrix p00 = Matrix::Zero(2, 2), p11 = Matrix::Zero(2, 2);
    p00(0, 0) = 1;
    p11(1, 1) = 1;
    const MatrixTuple x0{p00, p11};
    const double tstar = 1.0 / op_norm(contraction_matrix(ctx, x0));
    const MatrixTuple xb = x0.scaled(tstar);
    const auto quad = membership_quad(ctx, xb, cfg.eps);
    rep["boundary_scale"] = tstar;
    rep["boundary_quad"] = quad_to_json(quad);
    const bool pencil_boundary = quad.via_pencil.region == Region::boundary_band;
    const bool all_boundary = quad.via_pencil.region == Region::boundary_band &&
                              quad.via_contraction.region == Region::boundary_band &&
                              quad.via_left_defect.region == Region::boundary_band &&
                              quad.via_right_defect.region == Region::boundary_band;
    rep["boundary_all_four"] = all_boundary;
    const bool boundary_ok = ctx.s == 1 ? all_boundary : pencil_boundary;

    // two-sided-unitary image (N, N) must leave the closure: the right
    // defect I - T*T picks up a negative eigenvalue
    Matrix n01 = Matrix::Zero(2, 2);
    n01(0, 1) = 1;
    const MatrixTuple wx{n01, n01};
    const Matrix t = contraction_matrix(ctx, wx);
    const double wx_eig =
        herm_min_eig(Matrix(Matrix::Identity(t.rows(), t.cols()) - t.adjoint() * t));
    rep["wx_right_defect_min_eig"] = wx_eig;
    const bool wx_ok = wx_eig < -0.01;

    // circularity probe against the defining tuple; the swap witness must
    // leave, while the ball control must stay
    const auto probe = circular_symmetry_probe(make_R(ctx), samples, cfg.seed, cfg.eps);
    rep["probe"] = circular_probe_to_json(probe);
    const bool probe_ok = probe.fixed_candidate_tested && probe.fixed_candidate_is_witness;

    const auto control =
        circular_symmetry_probe(embed_ball(make_E(ctx)), samples, cfg.seed + 1, cfg.eps);
    rep["ball_control"] = circular_probe_to_json(control);
    const bool control_ok = !control.witness_found && !control.fixed_candidate_is_witness;

    rep["boundary_ok"] = boundary_ok;
    rep["wx_ok"] = wx_ok;
    rep["probe_ok"] = probe_ok;
    rep["control_ok"] = control_ok;
    return {boundary_ok && wx_ok && probe_ok && control_ok, rep};
}

// ----------------------------------------------------------- ball-minimal --

SuiteResult suite_ball_minimal(const PencilContext& ctx, const RunConfig& cfg) {
    const int samples = samples_or(cfg, 200);
    Json rep = base_report("ball-minimal", ctx, cfg);

    const auto cert = ball_minimality_certificate(ctx, 1e-8);
    rep["certificate"] = certificate_to_json(cert);

    // the matrix-unit tuple must define the same spectrahedron as the
    // embedded ball tuple, via the computed block permutation and on samples
    const auto f = build_F(ctx);
    const MatrixTuple h = embed_ball(make_E(ctx));
    Matrix perm = Matrix::Zero(6 * ctx.s, 6 * ctx.s);
    for (int a = 0; a < 6; ++a)
        perm.block(f.block_perm[a] * ctx.s, a * ctx.s, ctx.s, ctx.s) =
            Matrix::Identity(ctx.s, ctx.s);
    double perm_residual = 0;
    for (int j = 0; j < 2; ++j)
        perm_residual = std::max(perm_residual, (perm.adjoint() * h[j] * perm - f.F[j]).norm());
    rep["permutation_residual"] = perm_residual;
    const bool perm_ok = perm_residual <= 1e-12;

    const MatrixTuple e = make_E(ctx);
    int agreement_checked = 0, agreement_failures = 0, band_skipped = 0;
    BalancedSampler sampler(
        2, 2, [&](const MatrixTuple& x) { return spectraball_margin(e, x); },
        derive_seed(cfg.seed, "ball-minimal-calibrate", 0));
    rep["sampler_scale"] = sampler.scale();
    struct Trial {
        bool band = false, ball_embed_ok = true, f_ok = true;
    };
    auto trials = run_trials<Trial>(samples, cfg.parallel, [&](int i) {
        Rng rng(derive_seed(cfg.seed, "ball-minimal", i));
        const MatrixTuple x = sampler.draw(rng);
        const auto in_ball = in_spectraball(e, x, cfg.eps);
        const auto in_embed = in_spectrahedron(h, x, cfg.eps);
        const auto in_f = in_spectrahedron(f.F, x, cfg.eps);
        Trial t;
        t.band = in_ball.region == Region::boundary_band ||
                 in_embed.region == Region::boundary_band || in_f.region == Region::boundary_band;
        if (!t.band) {
            t.ball_embed_ok = in_ball.inside() == in_embed.inside();
            t.f_ok = in_embed.inside() == in_f.inside();
        }
        return t;
    });
    for (const auto& t : trials) {
        if (t.band) {
            ++band_skipped;
            continue;
        }
        ++agreement_checked;
        if (!t.ball_embed_ok || !t.f_ok) ++agreement_failures;
    }
    rep["membership_checked"] = agreement_checked;
    rep["membership_band_skipped"] = band_skipped;
    rep["membership_failures"] = agreement_failures;

    // equivalence probe: reflexive case, a two-sided unitary disguise, and
    // the padded row/column factors, which define different balls
    const MatrixTuple er = make_Er(ctx), ec = make_Ec(ctx);
    auto pad = [&](const MatrixTuple& t_) {
        std::vector<Matrix> out;
        for (int j = 0; j < t_.g(); ++j) {
            Matrix m = Matrix::Zero(3 * ctx.s, 3 * ctx.s);
            m.topLeftCorner(t_.rows(), t_.cols()) = t_[j];
            out.push_back(std::move(m));
        }
        return MatrixTuple(std::move(out));
    };
    const auto self_probe = ball_equivalence_probe(e, e);
    Rng urng(derive_seed(cfg.seed, "ball-minimal-unitary", 0));
    const Matrix uu = urng.unitary(e.cols()), vv = urng.unitary(e.rows());
    const auto disguised_probe = ball_equivalence_probe(e, two_sided(vv, e, uu));
    const auto factor_probe = ball_equivalence_probe(pad(er), pad(ec));
    rep["self_consistent"] =
        self_probe.verdict == BallEquivalenceReport::Verdict::consistent_up_to_maxlen;
    rep["disguised_consistent"] =
        disguised_probe.verdict == BallEquivalenceReport::Verdict::consistent_up_to_maxlen;
    rep["disguised_max_mismatch"] = disguised_probe.max_mismatch;
    rep["factors_distinct"] = factor_probe.verdict == BallEquivalenceReport::Verdict::distinct;
    rep["factors_mismatch_length"] = factor_probe.mismatch_length;

    const bool probes_ok = rep["self_consistent"].get<bool>() &&
                           rep["disguised_consistent"].get<bool>() &&
                           rep["factors_distinct"].get<bool>();
    const bool pass = cert.certified && perm_ok && agreement_failures == 0 && probes_ok;
    return {pass, rep};
}

// ----------------------------------------------------------------- julia --

SuiteResult suite_julia(const PencilContext& ctx, const RunConfig& cfg) {
    const int samples = samples_or(cfg, 100);
    Json rep = base_report("julia", ctx, cfg);

    struct Trial {
        double unitarity = 0;
        double expansion_defect = 0;
    };
    auto trials = run_trials<Trial>(samples, cfg.parallel, [&](int i) {
        Rng rng(derive_seed(cfg.seed, "julia", i));
        const Eigen::Index p = 1 + static_cast<Eigen::Index>(rng.next_u64() % 4);
        const Eigen::Index q = 1 + static_cast<Eigen::Index>(rng.next_u64() % 4);
        const Matrix m = rng.gaussian(p, q);
        const double rho = rng.uniform(0.05, 0.9) / op_norm(m);
        const double theta = rng.uniform(0, 2 * M_PI);
        const Complex z(std::cos(theta), std::sin(theta));
        const Matrix t = julia_matrix(m, rho, z);
        Trial tr;
        tr.unitarity =
            (t.adjoint() * t - Matrix::Identity(t.rows(), t.cols())).norm();
        // ||T - I|| = rho ||M|| + O(rho^2) on the unit circle
        for (double small_rho : {1e-2, 1e-3}) {
            const double r = small_rho / std::max(1.0, op_norm(m));
            const Matrix ts = julia_matrix(m, r, z);
            const double dev =
                std::abs(op_norm(ts - Matrix::Identity(ts.rows(), ts.cols())) - r * op_norm(m));
            const double allowed = 1.001 * r * r * op_norm(m) * op_norm(m) + 1e-12;
            tr.expansion_defect = std::max(tr.expansion_defect, dev - allowed);
        }
        return tr;
    });
    double max_unitarity = 0, max_expansion_defect = -1;
    for (const auto& t : trials) {
        max_unitarity = std::max(max_unitarity, t.unitarity);
        max_expansion_defect = std::max(max_expansion_defect, t.expansion_defect);
    }
    rep["samples"] = samples;
    rep["max_unitarity_defect"] = max_unitarity;
    rep["max_expansion_defect"] = max_expansion_defect;
    const bool pass = max_unitarity <= 1e-10 && max_expansion_defect <= 0;
    return {pass, rep};
}

// ------------------------------------------------------------- intertwine --

SuiteResult suite_intertwine(const PencilContext& ctx, const RunConfig& cfg) {
    const int samples = samples_or(cfg, 100);
    Json rep = base_report("intertwine", ctx, cfg);

    struct Trial {
        double residual = 0, conj_shift = 0, rational_residual = 0;
    };
    auto trials = run_trials<Trial>(samples, cfg.parallel, [&](int i) {
        Rng rng(derive_seed(cfg.seed, "intertwine", i));
        // random polynomial of degree <= 3 in two letters, scalar coefficients
        FreePolynomial p = FreePolynomial::scalar(2);
        p.add_term(Word{}, rng.cnormal());
        for (int letter = 0; letter < 2; ++letter) p.add_term(Word{letter}, rng.cnormal());
        for (int extra = 0; extra < 4; ++extra) {
            Word w;
            const int len = 2 + static_cast<int>(rng.next_u64() % 2);
            for (int k = 0; k < len; ++k) w.push_back(static_cast<int>(rng.next_u64() % 2));
            p.add_term(w, rng.cnormal());
        }
        const PowerSeries series(std::move(p), 3);

        const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.next_u64() % 3);
        const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng.next_u64() % 3);
        // block-triangular extension keeps X_j Gamma = Gamma Y_j exact;
        // scaled into the series convergence gate after assembly
        MatrixTuple x = gaussian_tuple(rng, 2, n);
        std::vector<Matrix> ys;
        for (int j = 0; j < 2; ++j) {
            Matrix y = Matrix::Zero(n + m, n + m);
            y.topLeftCorner(n, n) = x[j];
            y.bottomLeftCorner(m, n) = rng.gaussian(m, n);
            y.bottomRightCorner(m, m) = rng.gaussian(m, m);
            ys.push_back(std::move(y));
        }
        MatrixTuple y(std::move(ys));
        const double rate = std::max(series_growth_rate(series), 1.0);
        const double widest = std::max(op_norm(row_matrix(x)), op_norm(row_matrix(y)));
        const double shrink = 0.45 / (2.0 * rate * widest);
        x = x.scaled(shrink);
        y = y.scaled(shrink);
        Matrix gamma = Matrix::Zero(n, n + m);
        gamma.leftCols(n) = Matrix::Identity(n, n);

        Trial t;
        t.residual = check_intertwining(series, x, y, gamma);
        const Matrix u = rng.unitary(n), v = rng.unitary(n + m);
        const double conj_residual = check_intertwining(series, unitary_conj(u, x),
                                                        unitary_conj(v, y), u.adjoint() * gamma * v);
        t.conj_shift = std::abs(conj_residual - t.residual);

        // one rational instance per trial over the same intertwining data
        Realization r;
        r.A = gaussian_tuple(rng, 2, 3).scaled(0.25);
        r.c = rng.gaussian(3, 1);
        r.b = rng.gaussian(3, 1);
        r.c /= r.c.norm();
        r.b /= r.b.norm();
        t.rational_residual = check_intertwining(r, x, y, gamma);
        return t;
    });
    double max_res = 0, max_conj = 0, max_rat = 0;
    for (const auto& t : trials) {
        max_res = std::max(max_res, t.residual);
        max_conj = std::max(max_conj, t.conj_shift);
        max_rat = std::max(max_rat, t.rational_residual);
    }
    rep["samples"] = samples;
    rep["max_series_residual"] = max_res;
    rep["max_conjugation_shift"] = max_conj;
    rep["max_rational_residual"] = max_rat;
    const bool pass = max_res <= 1e-9 && max_rat <= 1e-9 && max_conj <= 1e-12;
    return {pass, rep};
}

// -------------------------------------------------------------- nilpotent --

SuiteResult suite_nilpotent(const PencilContext& ctx, const RunConfig& cfg) {
    const int samples = samples_or(cfg, 100);
    Json rep = base_report("nilpotent", ctx, cfg);

    struct Trial {
        double shift_defect = 0, interp_defect = 0, neumann_defect = 0;
        bool orders_ok = true;
    };
    auto trials = run_trials<Trial>(samples, cfg.parallel, [&](int i) {
        Rng rng(derive_seed(cfg.seed, "nilpotent", i));
        Trial t;
        const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.next_u64() % 3);

        // random series of degree <= 4, scalar coefficients
        FreePolynomial p = FreePolynomial::scalar(2);
        p.add_term(Word{}, rng.cnormal());
        for (int letter = 0; letter < 2; ++letter) p.add_term(Word{letter}, rng.cnormal());
        for (int extra = 0; extra < 6; ++extra) {
            Word w;
            const int len = 2 + static_cast<int>(rng.next_u64() % 3);
            for (int k = 0; k < len; ++k) w.push_back(static_cast<int>(rng.next_u64() % 2));
            p.add_term(w, rng.cnormal());
        }
        const PowerSeries series(std::move(p), 4);

        // shift-tuple evaluation sees exactly the affine part
        const MatrixTuple x = gaussian_tuple(rng, 2, n);
        const MatrixTuple sx = shift_tuple(x);
        t.orders_ok = nilpotency_order(sx, 4) == std::optional<int>(2);
        const Matrix direct = nilpotent_eval(series, sx, Complex(1, 0));
        const auto aff = affine_part(series);
        Matrix first = Matrix::Zero(n, n);
        for (int j = 0; j < 2; ++j) first += aff.ell[j](0, 0) * x[j];
        const Matrix expected = aff.f0(0, 0) * Matrix::Identity(2 * n, 2 * n) +
                                kron(nilpotent_shift(), first);
        t.shift_defect = (direct - expected).norm();

        // z |-> f(zX) is a polynomial of degree < order: Lagrange data at
        // `order` nodes must predict a fresh node
        const Eigen::Index nn = 3;
        Matrix strict = Matrix::Zero(nn, nn);
        strict(0, 1) = rng.cnormal();
        strict(0, 2) = rng.cnormal();
        strict(1, 2) = rng.cnormal();
        Matrix strict2 = Matrix::Zero(nn, nn);
        strict2(0, 1) = rng.cnormal();
        strict2(1, 2) = rng.cnormal();
        const MatrixTuple xs{strict, strict2};
        const auto ord = nilpotency_order(xs, 6);
        if (!ord || *ord > 4) {
            t.orders_ok = false;
        } else {
            const int m = *ord;
            std::vector<Complex> nodes;
            std::vector<Matrix> values;
            for (int k = 0; k < m; ++k) {
                const double th = 2 * M_PI * k / m;
                nodes.push_back(0.7 * Complex(std::cos(th), std::sin(th)));
                values.push_back(nilpotent_eval(series, xs, nodes.back()));
            }
            const Complex zstar(0.3, 0.4);
            Matrix predicted = Matrix::Zero(values[0].rows(), values[0].cols());
            for (int k = 0; k < m; ++k) {
                Complex weight(1, 0);
                for (int l = 0; l < m; ++l)
                    if (l != k) weight *= (zstar - nodes[l]) / (nodes[k] - nodes[l]);
                predicted += weight * values[k];
            }
            t.interp_defect = (predicted - nilpotent_eval(series, xs, zstar)).norm();
        }

        // resolvent evaluation vs the degree-12 truncation of its expansion
        Realization r;
        r.A = gaussian_tuple(rng, 2, 3);
        r.c = rng.gaussian(3, 1);
        r.b = rng.gaussian(3, 1);
        r.c /= r.c.norm();
        r.b /= r.b.norm();
        MatrixTuple xr = gaussian_tuple(rng, 2, n);
        const double lam = op_norm(lambda_pencil(r.A, xr));
        xr = xr.scaled(rng.uniform(0.2, 0.5) / lam);
        const auto trunc_series = realization_series(r, 12);
        const Matrix via_series = eval_poly(trunc_series.coeffs, xr);
        const Matrix via_resolvent = rational_eval(r, xr);
        t.neumann_defect = op_norm(via_series - via_resolvent);
        return t;
    });
    double max_shift = 0, max_interp = 0, max_neumann = 0;
    bool orders_ok = true;
    for (const auto& t : trials) {
        max_shift = std::max(max_shift, t.shift_defect);
        max_interp = std::max(max_interp, t.interp_defect);
        max_neumann = std::max(max_neumann, t.neumann_defect);
        orders_ok = orders_ok && t.orders_ok;
    }
    rep["samples"] = samples;
    rep["max_shift_defect"] = max_shift;
    rep["max_interpolation_defect"] = max_interp;
    rep["max_neumann_defect"] = max_neumann;
    rep["orders_ok"] = orders_ok;
    const bool pass =
        max_shift <= 1e-12 && max_interp <= 1e-9 && max_neumann <= std::pow(2.0, -12) * 2 && orders_ok;
    return {pass, rep};
}

// ----------------------------------------------------------------- althfp --

AutJet random_jet(Rng& rng, const PencilContext& ctx, bool allow_nonzero_b) {
    AutJet jet;
    jet.L = rng.gaussian(2, 2);
    for (int tries = 0; tries < 100; ++tries) {
        jet.b = {allow_nonzero_b ? 0.4 * rng.cnormal() : Complex(0, 0),
                 allow_nonzero_b ? 0.4 * rng.cnormal() : Complex(0, 0)};
        if (base_point_inside(jet, ctx)) return jet;
    }
    jet.b = {Complex(0, 0), Complex(0, 0)};
    return jet;
}

SuiteResult suite_althfp(const PencilContext& ctx, const RunConfig& cfg) {
    const int samples = samples_or(cfg, 100);
    Json rep = base_report("althfp", ctx, cfg);

    // control permutation: swap two images of the canonical shuffle
    Matrix bad = shuffle_permutation8();
    bad.col(4).swap(bad.col(5));

    struct Trial {
        double residual = 0, control = 1;
    };
    auto trials = run_trials<Trial>(samples, cfg.parallel, [&](int i) {
        Rng rng(derive_seed(cfg.seed, "althfp", i));
        const AutJet jet = random_jet(rng, ctx, i % 4 != 0);  // mostly b != 0
        const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.next_u64() % 3);
        const MatrixTuple x = gaussian_tuple(rng, 2, n);
        Trial t;
        t.residual = shuffle_identity_residual(jet, ctx, x);
        t.control = shuffle_identity_residual(jet, ctx, x, bad);
        return t;
    });
    double max_residual = 0, min_control = 1e300;
    for (const auto& t : trials) {
        max_residual = std::max(max_residual, t.residual);
        min_control = std::min(min_control, t.control);
    }
    rep["samples"] = samples;
    rep["max_residual"] = max_residual;
    rep["min_control_residual"] = min_control;
    const bool pass = max_residual <= 1e-12 && min_control > 0.1;
    return {pass, rep};
}

// ----------------------------------------------------------- jet-necessary --

SuiteResult suite_jet_necessary(const PencilContext& ctx, const RunConfig& cfg) {
    const int probe_trials = samples_or(cfg, 10000);
    const auto levels = levels_or(cfg, {1, 2, 3});
    Json rep = base_report("jet-necessary", ctx, cfg);
    rep["probe_trials"] = probe_trials;
    rep["levels"] = levels;

    // identity jet reproduces the defining tuple exactly
    AutJet identity_jet{{Complex(0, 0), Complex(0, 0)}, Matrix::Identity(2, 2)};
    const MatrixTuple b_id = build_B(identity_jet, ctx);
    const MatrixTuple r = make_R(ctx);
    const double id_defect = std::max((b_id[0] - r[0]).norm(), (b_id[1] - r[1]).norm());
    rep["identity_defect"] = id_defect;
    const bool identity_ok = id_defect <= 1e-14;

    // trivial jets: classified trivial, zero compatibility residual, no
    // ball-disagreement witness
    std::vector<AutJet> trivial_jets;
    {
        Matrix d = Matrix::Zero(2, 2);
        d(0, 0) = std::polar(1.0, 0.7);
        d(1, 1) = std::polar(1.0, -1.3);
        trivial_jets.push_back({{Complex(0, 0), Complex(0, 0)}, d});
        Matrix a = Matrix::Zero(2, 2);
        a(0, 1) = std::polar(1.0, 2.1);
        a(1, 0) = std::polar(1.0, 0.4);
        trivial_jets.push_back({{Complex(0, 0), Complex(0, 0)}, a});
    }
    bool trivia_ok = true;
    double max_trivial_pres = 0;
    Json trivial_reports = Json::array();
    for (size_t k = 0; k < trivial_jets.size(); ++k) {
        const auto& jet = trivial_jets[k];
        const auto cls = classify_jet(jet, ctx, cfg.eps);
        const double pres = jet_compatibility_residual(jet, ctx);
        max_trivial_pres = std::max(max_trivial_pres, pres);
        const auto probe =
            ball_agreement_probe(jet, ctx, levels, probe_trials, cfg.seed + k, cfg.eps);
        trivial_reports.push_back({{"classification", jet_classification_to_json(cls)},
                                   {"compatibility_residual", pres},
                                   {"probe", ball_agreement_to_json(probe)}});
        trivia_ok = trivia_ok && cls.verdict == JetVerdict::trivial && !probe.witness_found &&
                    pres <= 1e-12;
    }
    rep["trivial_jets"] = trivial_reports;
    rep["max_trivial_compatibility_residual"] = max_trivial_pres;

    // rejections
    bool reject_b_ok = true;
    if (ctx.s > 1) {
        AutJet jb{{Complex(0.1, 0), Complex(0.1, 0)}, Matrix::Identity(2, 2)};
        const auto cls = classify_jet(jb, ctx, cfg.eps);
        rep["reject_b"] = jet_classification_to_json(cls);
        reject_b_ok = cls.verdict == JetVerdict::violates_necessary_conditions &&
                      cls.failed_condition == "b1-b2star-nonzero";
    }
    Matrix halfdiag = Matrix::Zero(2, 2);
    halfdiag(0, 0) = 0.5;
    halfdiag(1, 1) = 1.0;
    AutJet jnu{{Complex(0, 0), Complex(0, 0)}, halfdiag};
    const auto cls_nu = classify_jet(jnu, ctx, cfg.eps);
    rep["reject_nonunitary"] = jet_classification_to_json(cls_nu);
    const bool reject_nu_ok = cls_nu.verdict == JetVerdict::violates_necessary_conditions &&
                              cls_nu.failed_condition == "L-not-unitary";

    // kernel structure: dim s joint kernel sitting at B0^{1/2} of the first
    // block coordinate
    int kernel_failures = 0;
    double max_angle = 0;
    const int jet_count = 50;
    for (int i = 0; i < jet_count; ++i) {
        Rng rng(derive_seed(cfg.seed, "jet-kernel", i));
        const AutJet jet = random_jet(rng, ctx, true);
        const MatrixTuple b = build_B(jet, ctx);
        const auto kernel = kernel_intersection(b, 1e-8);
        if (static_cast<Eigen::Index>(kernel.size()) != ctx.s) {
            ++kernel_failures;
            continue;
        }
        const Matrix b0half = sqrt_posdef(build_B0(jet, ctx));
        Matrix target = Matrix::Zero(4 * ctx.s, ctx.s);
        target.topRows(ctx.s) = Matrix::Identity(ctx.s, ctx.s);
        const auto expected = column_space_basis(b0half * target);
        const double angle = max_principal_angle(kernel, expected);
        max_angle = std::max(max_angle, angle);
        if (angle > 1e-8) ++kernel_failures;
    }
    rep["kernel_jets"] = jet_count;
    rep["kernel_failures"] = kernel_failures;
    rep["kernel_max_principal_angle"] = max_angle;

    // fixed kernels of the concrete tuples: R has first-block joint kernel,
    // E has none
    const auto ker_r = kernel_intersection(make_R(ctx), 1e-8);
    const auto ker_e = kernel_intersection(make_E(ctx), 1e-8);
    Matrix h1 = Matrix::Zero(4 * ctx.s, ctx.s);
    h1.topRows(ctx.s) = Matrix::Identity(ctx.s, ctx.s);
    const bool ker_r_ok = static_cast<Eigen::Index>(ker_r.size()) == ctx.s &&
                          max_principal_angle(ker_r, column_space_basis(h1)) <= 1e-8;
    const bool ker_e_ok = ker_e.empty();
    rep["kernel_R_ok"] = ker_r_ok;
    rep["kernel_E_ok"] = ker_e_ok;

    const bool pass = identity_ok && trivia_ok && reject_b_ok && reject_nu_ok &&
                      kernel_failures == 0 && ker_r_ok && ker_e_ok;
    rep["identity_ok"] = identity_ok;
    rep["trivial_ok"] = trivia_ok;
    rep["reject_b_ok"] = reject_b_ok;
    rep["reject_nonunitary_ok"] = reject_nu_ok;
    return {pass, rep};
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "fp-alt",    "ball-decomp", "not-a-ball", "ball-minimal", "julia",
        "intertwine", "nilpotent",  "althfp",     "jet-necessary"};
    return names;
}

SuiteResult run_suite(const std::string& name, const PencilContext& ctx, const RunConfig& cfg) {
    if (name == "fp-alt") return suite_fp_alt(ctx, cfg);
    if (name == "ball-decomp") return suite_ball_decomp(ctx, cfg);
    if (name == "not-a-ball") return suite_not_a_ball(ctx, cfg);
    if (name == "ball-minimal") return suite_ball_minimal(ctx, cfg);
    if (name == "julia") return suite_julia(ctx, cfg);
    if (name == "intertwine") return suite_intertwine(ctx, cfg);
    if (name == "nilpotent") return suite_nilpotent(ctx, cfg);
    if (name == "althfp") return suite_althfp(ctx, cfg);
    if (name == "jet-necessary") return suite_jet_necessary(ctx, cfg);
    throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace freespec
