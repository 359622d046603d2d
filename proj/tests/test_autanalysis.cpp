#include "freespec/autanalysis.hpp"

#include <doctest.h>

#include <cmath>

using namespace freespec;

namespace {

PencilContext ctx_s1() {
    return PencilContext(Matrix::Identity(1, 1), Matrix::Identity(1, 1));
}

PencilContext ctx_s2() {
    Matrix c1 = Matrix::Zero(2, 2);
    c1(0, 0) = 1;
    c1(1, 1) = 0.5;
    Matrix c2(2, 2);
    c2 << 0.75, 0.25, 0.25, 0.75;
    return PencilContext(c1, c2);
}

AutJet identity_jet() { return {{Complex(0, 0), Complex(0, 0)}, Matrix::Identity(2, 2)}; }

AutJet random_inside_jet(Rng& rng, const PencilContext& ctx) {
    AutJet jet{{Complex(0, 0), Complex(0, 0)}, rng.gaussian(2, 2)};
    do {
        jet.b = {0.35 * rng.cnormal(), 0.35 * rng.cnormal()};
    } while (!base_point_inside(jet, ctx));
    return jet;
}

}  // namespace

TEST_CASE("base pencil value at the anchor point") {
    const auto ctx = ctx_s1();
    CHECK((build_B0(identity_jet(), ctx) - Matrix::Identity(4, 4)).norm() == 0.0);

    AutJet jet{{Complex(0.3, 0), Complex(0, 0)}, Matrix::Identity(2, 2)};
    const Matrix b0 = build_B0(jet, ctx);
    Matrix expect = Matrix::Identity(4, 4);
    expect(0, 1) = 0.3;
    expect(1, 0) = 0.3;
    expect(2, 3) = 0.3;
    expect(3, 2) = 0.3;
    CHECK((b0 - expect).norm() <= 1e-15);
    CHECK(herm_min_eig(b0) == doctest::Approx(0.7).epsilon(1e-12));

    // B0 is the defining pencil at b, always
    Rng rng(401);
    const auto ctx2 = ctx_s2();
    for (int i = 0; i < 50; ++i) {
        const AutJet j = random_inside_jet(rng, ctx2);
        CHECK((build_B0(j, ctx2) - defining_pencil(ctx2, base_point_tuple(j))).norm() == 0.0);
    }

    AutJet outside{{Complex(0.9, 0), Complex(0.9, 0)}, Matrix::Identity(2, 2)};
    CHECK_THROWS_AS(build_B0(outside, ctx), std::domain_error);
}

TEST_CASE("first-order coefficient tuple uses the transposed index pattern") {
    const auto ctx = ctx_s2();
    const MatrixTuple r = make_R(ctx);

    const MatrixTuple y_id = build_Y(identity_jet(), ctx);
    CHECK((y_id[0] - r[0]).norm() == 0.0);
    CHECK((y_id[1] - r[1]).norm() == 0.0);

    Matrix swap = Matrix::Zero(2, 2);
    swap(0, 1) = 1;
    swap(1, 0) = 1;
    const MatrixTuple y_swap = build_Y({{Complex(0, 0), Complex(0, 0)}, swap}, ctx);
    CHECK((y_swap[0] - r[1]).norm() == 0.0);
    CHECK((y_swap[1] - r[0]).norm() == 0.0);

    // mixed entries land column-wise: Y_j = sum_k L(k, j) R_k
    Matrix l(2, 2);
    l << Complex(1, 0), Complex(2, 0), Complex(3, 0), Complex(4, 0);
    const MatrixTuple y = build_Y({{Complex(0, 0), Complex(0, 0)}, l}, ctx);
    CHECK((y[0] - (1.0 * r[0] + 3.0 * r[1])).norm() == 0.0);
    CHECK((y[1] - (2.0 * r[0] + 4.0 * r[1])).norm() == 0.0);
}

TEST_CASE("normalized pencil tuple reproduces the defining tuple at the identity jet") {
    for (const auto& ctx : {ctx_s1(), ctx_s2()}) {
        const MatrixTuple b = build_B(identity_jet(), ctx);
        const MatrixTuple r = make_R(ctx);
        CHECK((b[0] - r[0]).norm() <= 1e-14);
        CHECK((b[1] - r[1]).norm() <= 1e-14);

        Matrix anti = Matrix::Zero(2, 2);
        anti(0, 1) = 1;
        anti(1, 0) = 1;
        const MatrixTuple bs = build_B({{Complex(0, 0), Complex(0, 0)}, anti}, ctx);
        CHECK((bs[0] - r[1]).norm() <= 1e-14);
        CHECK((bs[1] - r[0]).norm() <= 1e-14);
    }
}

TEST_CASE("joint kernel of the normalized tuple is the dressed first block") {
    Rng rng(409);
    for (const auto& ctx : {ctx_s1(), ctx_s2()}) {
        for (int i = 0; i < 25; ++i) {
            const AutJet jet = random_inside_jet(rng, ctx);
            const MatrixTuple b = build_B(jet, ctx);
            const auto kernel = kernel_intersection(b, 1e-8);
            REQUIRE(static_cast<Eigen::Index>(kernel.size()) == ctx.s);

            Matrix h1 = Matrix::Zero(4 * ctx.s, ctx.s);
            h1.topRows(ctx.s) = Matrix::Identity(ctx.s, ctx.s);
            const auto target = column_space_basis(sqrt_posdef(build_B0(jet, ctx)) * h1);
            CHECK(max_principal_angle(kernel, target) <= 1e-8);
        }
    }
}

TEST_CASE("shuffle permutation is a real unitary 0/1 matrix") {
    const Matrix p8 = shuffle_permutation8();
    CHECK((p8.adjoint() * p8 - Matrix::Identity(8, 8)).norm() == 0.0);
    for (Eigen::Index i = 0; i < 8; ++i) {
        CHECK(p8.row(i).cwiseAbs().sum() == doctest::Approx(1.0));
        CHECK(p8.col(i).cwiseAbs().sum() == doctest::Approx(1.0));
    }
    const Matrix p = shuffle_permutation(3);
    CHECK((p.adjoint() * p - Matrix::Identity(24, 24)).norm() == 0.0);
}

TEST_CASE("shuffled pencil identity holds to machine precision") {
    Rng rng(419);
    for (const auto& ctx : {ctx_s1(), ctx_s2()}) {
        // identity jet at zero reduces to the block identity
        CHECK(shuffle_identity_residual(identity_jet(), ctx, MatrixTuple::zero(2, 1, 1)) <=
              1e-14);
        for (int i = 0; i < 25; ++i) {
            const AutJet jet = random_inside_jet(rng, ctx);
            const Eigen::Index n = 1 + i % 3;
            const MatrixTuple x = gaussian_tuple(rng, 2, n);
            CHECK(shuffle_identity_residual(jet, ctx, x) <= 1e-12);
        }
        // a wrong permutation misplaces entries of unit size
        Matrix bad = shuffle_permutation8();
        bad.col(2).swap(bad.col(3));
        const AutJet jet = random_inside_jet(rng, ctx);
        const MatrixTuple x = gaussian_tuple(rng, 2, 2);
        CHECK(shuffle_identity_residual(jet, ctx, x, bad) > 0.1);
    }
}

TEST_CASE("first-order compatibility residual") {
    const auto ctx2 = ctx_s2();

    Matrix diag = Matrix::Zero(2, 2);
    diag(0, 0) = std::polar(1.0, 0.5);
    diag(1, 1) = std::polar(1.0, -0.2);
    CHECK(jet_compatibility_residual({{Complex(0, 0), Complex(0, 0)}, diag}, ctx2) <= 1e-15);

    Matrix anti = Matrix::Zero(2, 2);
    anti(0, 1) = std::polar(1.0, 1.0);
    anti(1, 0) = std::polar(1.0, 2.0);
    CHECK(jet_compatibility_residual({{Complex(0, 0), Complex(0, 0)}, anti}, ctx2) <= 1e-15);

    // dense L with b = 0 forces a nonzero left side against a zero right side
    Matrix dense(2, 2);
    dense << M_SQRT1_2, M_SQRT1_2, -M_SQRT1_2, M_SQRT1_2;
    CHECK(jet_compatibility_residual({{Complex(0, 0), Complex(0, 0)}, dense}, ctx2) > 0.01);
}

TEST_CASE("jet classification") {
    const auto ctx1 = ctx_s1();
    const auto ctx2 = ctx_s2();

    Matrix diag = Matrix::Zero(2, 2);
    diag(0, 0) = std::polar(1.0, 0.7);
    diag(1, 1) = std::polar(1.0, -1.1);
    CHECK(classify_jet({{Complex(0, 0), Complex(0, 0)}, diag}, ctx1).verdict ==
          JetVerdict::trivial);

    Matrix anti = Matrix::Zero(2, 2);
    anti(0, 1) = std::polar(1.0, 2.1);
    anti(1, 0) = std::polar(1.0, 0.3);
    CHECK(classify_jet({{Complex(0, 0), Complex(0, 0)}, anti}, ctx2).verdict ==
          JetVerdict::trivial);

    const auto reject_b =
        classify_jet({{Complex(0.1, 0), Complex(0.1, 0)}, Matrix::Identity(2, 2)}, ctx2);
    CHECK(reject_b.verdict == JetVerdict::violates_necessary_conditions);
    CHECK(reject_b.failed_condition == "b1-b2star-nonzero");

    Matrix halfdiag = Matrix::Zero(2, 2);
    halfdiag(0, 0) = 0.5;
    halfdiag(1, 1) = 1;
    const auto reject_u = classify_jet({{Complex(0, 0), Complex(0, 0)}, halfdiag}, ctx2);
    CHECK(reject_u.verdict == JetVerdict::violates_necessary_conditions);
    CHECK(reject_u.failed_condition == "L-not-unitary");

    // shifted diagonal jet at s=1 passes every necessary condition without
    // being syntactically trivial
    const auto undet =
        classify_jet({{Complex(0.2, 0), Complex(0, 0)}, Matrix::Identity(2, 2)}, ctx1);
    CHECK(undet.verdict == JetVerdict::undetermined);

    // dense non-unitary jet at s>1 trips the dichotomy first
    Matrix dense(2, 2);
    dense << 1.0, 0.5, 0.5, 1.0;
    const auto reject_d = classify_jet({{Complex(0, 0), Complex(0, 0)}, dense}, ctx2);
    CHECK(reject_d.verdict == JetVerdict::violates_necessary_conditions);
    CHECK(reject_d.failed_condition == "zero-pattern-dichotomy");
}

TEST_CASE("verdicts are stable under composition with trivial jets") {
    const auto ctx = ctx_s2();
    Matrix swap = Matrix::Zero(2, 2);
    swap(0, 1) = 1;
    swap(1, 0) = 1;
    Matrix phase = Matrix::Zero(2, 2);
    phase(0, 0) = std::polar(1.0, 0.4);
    phase(1, 1) = std::polar(1.0, 1.7);

    // trivial compose trivial stays trivial
    AutJet composed{{Complex(0, 0), Complex(0, 0)}, Matrix(phase * swap)};
    CHECK(classify_jet(composed, ctx).verdict == JetVerdict::trivial);

    // post-composing the linear data preserves the b-product violation
    AutJet bad{{Complex(0.1, 0), Complex(0.1, 0)}, Matrix::Identity(2, 2)};
    AutJet bad_composed{{Complex(0.1, 0) * phase(0, 0), Complex(0.1, 0) * phase(1, 1)},
                        Matrix(phase * bad.L)};
    const auto v1 = classify_jet(bad, ctx);
    const auto v2 = classify_jet(bad_composed, ctx);
    CHECK(v1.verdict == v2.verdict);
    CHECK(v1.failed_condition == v2.failed_condition);
}

TEST_CASE("ball agreement probe finds no witness on trivial jets") {
    const auto ctx = ctx_s1();
    const auto rep = ball_agreement_probe(identity_jet(), ctx, {1, 2, 3}, 2000, 4242);
    CHECK(!rep.witness_found);
    CHECK(rep.agreements > 1000);

    Matrix anti = Matrix::Zero(2, 2);
    anti(0, 1) = std::polar(1.0, 0.9);
    anti(1, 0) = std::polar(1.0, -0.4);
    const auto rep2 =
        ball_agreement_probe({{Complex(0, 0), Complex(0, 0)}, anti}, ctx, {1, 2, 3}, 400, 4243);
    CHECK(!rep2.witness_found);
}

TEST_CASE("ball agreement probe searches shifted jets for witnesses") {
    // a base shift with identity linear data is expected to move the ball;
    // the probe reports the first confirmed disagreement (inconclusive runs
    // are allowed but logged)
    const auto ctx = ctx_s1();
    AutJet shifted{{Complex(0.2, 0), Complex(0, 0)}, Matrix::Identity(2, 2)};
    const auto rep = ball_agreement_probe(shifted, ctx, {1, 2, 3, 4}, 4000, 777);
    if (!rep.witness_found) {
        MESSAGE("inconclusive: no ball-disagreement witness in ", rep.trials, " trials");
    } else {
        CHECK(rep.witness_level <= 4);
        CHECK(rep.witness_margin_B * rep.witness_margin_E < 0);
        // re-check the reported witness from scratch
        const MatrixTuple b = build_B(shifted, ctx);
        const MatrixTuple e = make_E(ctx);
        CHECK(spectraball_margin(b, rep.witness_x) ==
              doctest::Approx(rep.witness_margin_B).epsilon(1e-10));
        CHECK(spectraball_margin(e, rep.witness_x) ==
              doctest::Approx(rep.witness_margin_E).epsilon(1e-10));
    }
    CHECK(rep.trials > 0);
}
