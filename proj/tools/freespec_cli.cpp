// Command-line surface for the free-spectrahedron toolkit: construction,
// membership, hypothesis checking, verification suites, and jet analysis,
// with JSON I/O and seeded determinism.
//
// Exit codes: 0 pass, 1 fail / witness found where forbidden, 2 usage or
// format error.  For `membership`, 0 means inside and 1 means boundary-band
// or outside.

#include "freespec/suites.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

namespace {

using namespace freespec;

void emit(const Json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        save_json_file(out_path, j);
}

int cmd_check_hypotheses(const std::string& ctx_path, double eps, const std::string& out_path) {
    const PencilContext ctx = context_from_json(load_json_file(ctx_path));
    const auto rep = check_hypotheses(ctx, eps);
    emit(hypotheses_to_json(rep), out_path);
    return rep.all_pass() ? 0 : 1;
}

int cmd_membership(const std::string& ctx_path, const std::string& tuple_path,
                   const std::string& pencil, double eps, double delta,
                   const std::string& out_path) {
    const PencilContext ctx = context_from_json(load_json_file(ctx_path));
    const MatrixTuple x = tuple_from_json(load_json_file(tuple_path));
    Json rep{{"pencil", pencil}, {"eps", eps}};
    bool is_inside = false;
    if (pencil == "fP") {
        const auto quad = membership_quad(ctx, x, eps);
        rep["quad"] = quad_to_json(quad);
        rep["classification"] = to_string(quad.via_pencil.region);
        rep["margin"] = quad.via_pencil.margin;
        is_inside = quad.via_pencil.inside();
    } else {
        Classification c;
        if (pencil == "BE")
            c = in_spectraball(make_E(ctx), x, eps);
        else if (pencil == "BEr")
            c = in_spectraball(make_Er(ctx), x, eps);
        else if (pencil == "BEc")
            c = in_spectraball(make_Ec(ctx), x, eps);
        else if (pencil == "row-ball")
            c = in_row_ball(x, delta, eps);
        else
            throw CLI::ValidationError("--pencil", "unknown pencil " + pencil);
        rep["classification"] = to_string(c.region);
        rep["margin"] = c.margin;
        is_inside = c.inside();
    }
    emit(rep, out_path);
    return is_inside ? 0 : 1;
}

int cmd_verify(const std::string& ctx_path, const std::string& suite, const RunConfig& cfg,
               const std::string& out_path) {
    const PencilContext ctx = context_from_json(load_json_file(ctx_path));
    const auto result = run_suite(suite, ctx, cfg);
    Json rep = result.report;
    rep["pass"] = result.pass;
    emit(rep, out_path);
    return result.pass ? 0 : 1;
}

int cmd_jet_analyze(const std::string& ctx_path, const std::string& jet_path, const RunConfig& cfg,
                    const std::string& out_path) {
    const PencilContext ctx = context_from_json(load_json_file(ctx_path));
    const AutJet jet = jet_from_json(load_json_file(jet_path));
    Json rep{{"eps", cfg.eps}, {"seed", cfg.seed}};
    if (!base_point_inside(jet, ctx)) {
        rep["invalid_jet"] = true;
        rep["reason"] = "base point outside the level-one set";
        emit(rep, out_path);
        return 1;
    }
    rep["invalid_jet"] = false;
    const auto cls = classify_jet(jet, ctx, cfg.eps);
    rep["classification"] = jet_classification_to_json(cls);
    rep["compatibility_residual"] = jet_compatibility_residual(jet, ctx);

    double max_shuffle = 0;
    const int shuffle_checks = 16;
    for (int i = 0; i < shuffle_checks; ++i) {
        Rng rng(derive_seed(cfg.seed, "jet-analyze-shuffle", i));
        const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.next_u64() % 3);
        max_shuffle = std::max(max_shuffle,
                               shuffle_identity_residual(jet, ctx, gaussian_tuple(rng, 2, n)));
    }
    rep["max_shuffle_residual"] = max_shuffle;

    const int trials = cfg.samples > 0 ? cfg.samples : 2000;
    const auto levels = cfg.levels.empty() ? std::vector<Eigen::Index>{1, 2, 3, 4} : cfg.levels;
    const auto probe = ball_agreement_probe(jet, ctx, levels, trials, cfg.seed, cfg.eps);
    rep["probe"] = ball_agreement_to_json(probe);

    const bool rejected =
        cls.verdict == JetVerdict::violates_necessary_conditions || probe.witness_found;
    rep["verdict"] = rejected            ? "rejected"
                     : cls.verdict == JetVerdict::trivial ? "trivial"
                                                          : "undetermined-no-witness";
    emit(rep, out_path);
    return rejected ? 1 : 0;
}

int cmd_gen_random(const std::string& kind, Eigen::Index s, Eigen::Index n, std::uint64_t seed,
                   const std::string& out_path) {
    Rng rng(derive_seed(seed, "gen-random", 0));
    Json j;
    if (kind == "context") {
        // random norm-1 pair built from unitaries and a spread of singular values
        Matrix d = Matrix::Zero(s, s);
        for (Eigen::Index i = 0; i < s; ++i) d(i, i) = rng.uniform(0.4, 1.0);
        const Matrix c1 = rng.unitary(s) * d * rng.unitary(s);
        Matrix d2 = Matrix::Zero(s, s);
        for (Eigen::Index i = 0; i < s; ++i) d2(i, i) = rng.uniform(0.4, 1.0);
        const Matrix c2 = rng.unitary(s) * d2 * rng.unitary(s);
        j = context_to_json(PencilContext(c1, c2));
    } else if (kind == "tuple") {
        j = tuple_to_json(gaussian_tuple(rng, 2, n));
    } else if (kind == "jet") {
        AutJet jet;
        jet.b = {0.2 * rng.cnormal(), 0.2 * rng.cnormal()};
        jet.L = rng.gaussian(2, 2);
        j = jet_to_json(jet);
    } else {
        throw CLI::ValidationError("kind", "unknown kind " + kind);
    }
    emit(j, out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"free spectrahedron toolkit"};
    app.require_subcommand(1);

    std::string ctx_path, tuple_path, jet_path, out_path, pencil = "fP", suite, kind;
    double eps = 1e-7, delta = 1.0;
    std::uint64_t seed = 1;
    int samples = 0;
    std::vector<long> levels;
    bool parallel = false;
    Eigen::Index gen_s = 2, gen_n = 2;

    auto* check = app.add_subcommand("check-hypotheses", "invertibility and generation checks");
    check->add_option("--context", ctx_path, "context JSON file")->required();
    check->add_option("--eps", eps, "tolerance");
    check->add_option("--out", out_path, "write report JSON here");

    auto* mem = app.add_subcommand("membership", "classify a tuple against a pencil");
    mem->add_option("--context", ctx_path)->required();
    mem->add_option("--tuple", tuple_path)->required();
    mem->add_option("--pencil", pencil, "fP | BE | BEr | BEc | row-ball");
    mem->add_option("--eps", eps);
    mem->add_option("--delta", delta, "radius for row-ball");
    mem->add_option("--out", out_path);

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--context", ctx_path)->required();
    verify->add_option("--suite", suite, "suite name")->required();
    verify->add_option("--eps", eps)->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed);
    verify->add_option("--samples", samples)->check(CLI::PositiveNumber);
    verify->add_option("--levels", levels)->check(CLI::PositiveNumber);
    verify->add_option("--out", out_path);
    verify->add_flag("--parallel", parallel, "run trials concurrently");

    auto* jet = app.add_subcommand("jet-analyze", "necessary-condition analysis of a jet");
    jet->add_option("--context", ctx_path)->required();
    jet->add_option("--jet", jet_path)->required();
    jet->add_option("--eps", eps)->check(CLI::PositiveNumber);
    jet->add_option("--seed", seed);
    jet->add_option("--samples", samples)->check(CLI::PositiveNumber);
    jet->add_option("--levels", levels)->check(CLI::PositiveNumber);
    jet->add_option("--out", out_path);

    auto* gen = app.add_subcommand("gen-random", "emit a sample context/tuple/jet");
    gen->add_option("kind", kind, "context | tuple | jet")->required();
    gen->add_option("--s", gen_s, "context size");
    gen->add_option("--n", gen_n, "tuple level");
    gen->add_option("--seed", seed);
    gen->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
        RunConfig cfg;
        cfg.eps = eps;
        cfg.seed = seed;
        cfg.samples = samples;
        cfg.levels.assign(levels.begin(), levels.end());
        cfg.parallel = parallel;
        if (check->parsed()) return cmd_check_hypotheses(ctx_path, eps, out_path);
        if (mem->parsed()) return cmd_membership(ctx_path, tuple_path, pencil, eps, delta, out_path);
        if (verify->parsed()) return cmd_verify(ctx_path, suite, cfg, out_path);
        if (jet->parsed()) return cmd_jet_analyze(ctx_path, jet_path, cfg, out_path);
        if (gen->parsed()) return cmd_gen_random(kind, gen_s, gen_n, seed, out_path);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
