#include "freespec/autanalysis.hpp"
#include "freespec/ballmin.hpp"

#include <doctest.h>

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

MatrixTuple pad_square(const MatrixTuple& t, Eigen::Index size) {
    std::vector<Matrix> out;
    for (int j = 0; j < t.g(); ++j) {
        Matrix m = Matrix::Zero(size, size);
        m.topLeftCorner(t.rows(), t.cols()) = t[j];
        out.push_back(std::move(m));
    }
    return MatrixTuple(std::move(out));
}

}  // namespace

TEST_CASE("embed_ball shape and degenerate input") {
    Rng rng(201);
    const MatrixTuple g{rng.gaussian(2, 3), rng.gaussian(2, 3)};
    const MatrixTuple h = embed_ball(g);
    CHECK(h.rows() == 5);
    CHECK(h.cols() == 5);
    CHECK((h[0].topRightCorner(2, 3) - g[0]).norm() == 0.0);
    CHECK(h[0].bottomRows(3).norm() == 0.0);

    const MatrixTuple zero = embed_ball(MatrixTuple::zero(2, 2, 2));
    CHECK(zero[0].norm() == 0.0);
    // everything is inside the spectrahedron of the zero pencil
    Rng rng2(202);
    CHECK(in_spectrahedron(zero, gaussian_tuple(rng2, 2, 2).scaled(50.0)).inside());
}

TEST_CASE("matrix-unit tuple F and its block permutation") {
    const auto ctx1 = ctx_s1();
    const auto f1 = build_F(ctx1);
    Matrix f1a = Matrix::Zero(6, 6), f1b = Matrix::Zero(6, 6);
    f1a(0, 1) = 1;
    f1a(4, 5) = 1;
    f1b(0, 2) = 1;
    f1b(3, 5) = 1;
    CHECK((f1.F[0] - f1a).norm() == 0.0);
    CHECK((f1.F[1] - f1b).norm() == 0.0);

    const auto ctx = ctx_s2();
    const auto f = build_F(ctx);

    // F_1 F_1* = (E_11 + E_55) (x) C_1 C_1*
    Matrix units = Matrix::Zero(6, 6);
    units(0, 0) = 1;
    units(4, 4) = 1;
    CHECK((f.F[0] * f.F[0].adjoint() - kron(units, Matrix(ctx.C1 * ctx.C1.adjoint()))).norm() <=
          1e-14);

    // the permutation carries embed_ball(E) onto F exactly
    const MatrixTuple h = embed_ball(make_E(ctx));
    Matrix perm = Matrix::Zero(6 * ctx.s, 6 * ctx.s);
    for (int a = 0; a < 6; ++a)
        perm.block(f.block_perm[a] * ctx.s, a * ctx.s, ctx.s, ctx.s) =
            Matrix::Identity(ctx.s, ctx.s);
    for (int j = 0; j < 2; ++j)
        CHECK((perm.adjoint() * h[j] * perm - f.F[j]).norm() <= 1e-14);

    // same spectrahedron on balanced samples
    BalancedSampler sampler(
        2, 2, [&](const MatrixTuple& x) { return spectrahedron_margin(h, x); }, 313);
    Rng rng(203);
    int checked = 0;
    for (int i = 0; i < 100; ++i) {
        const MatrixTuple x = sampler.draw(rng);
        const auto a = in_spectrahedron(h, x);
        const auto b = in_spectrahedron(f.F, x);
        if (a.region == Region::boundary_band || b.region == Region::boundary_band) continue;
        ++checked;
        CHECK(a.inside() == b.inside());
    }
    CHECK(checked > 50);
}

TEST_CASE("ball minimality certificates") {
    const auto cert1 = ball_minimality_certificate(ctx_s1());
    CHECK(cert1.hypotheses_ok);
    CHECK(cert1.algebra_dim == 18);
    CHECK(cert1.commutant_dim == 2);
    CHECK(cert1.projections_match);
    CHECK(cert1.witnesses_ok);
    CHECK(cert1.certified);

    const auto cert2 = ball_minimality_certificate(ctx_s2());
    CHECK(cert2.algebra_dim == 72);
    CHECK(cert2.commutant_dim == 2);
    CHECK(cert2.certified);

    Matrix c = Matrix::Zero(2, 2);
    c(0, 0) = 1;
    c(1, 1) = 0.5;
    const auto refused = ball_minimality_certificate(PencilContext(c, c));
    CHECK(!refused.hypotheses_ok);
    CHECK(!refused.certified);
    CHECK(refused.algebra_dim == 0);  // refused before the algebra stage
}

TEST_CASE("ball equivalence probe") {
    const auto ctx = ctx_s2();
    const MatrixTuple e = make_E(ctx);

    const auto self_probe = ball_equivalence_probe(e, e);
    CHECK(self_probe.verdict == BallEquivalenceReport::Verdict::consistent_up_to_maxlen);

    Rng rng(211);
    const Matrix u = rng.unitary(e.cols()), v = rng.unitary(e.rows());
    const auto disguised = ball_equivalence_probe(e, two_sided(v, e, u));
    CHECK(disguised.verdict == BallEquivalenceReport::Verdict::consistent_up_to_maxlen);
    // the aggregate tensor-power measure carries a ~sqrt(1e-11 m) noise
    // floor; anything genuinely distinct shows up orders of magnitude higher
    CHECK(disguised.max_mismatch <= 1e-6);

    // symmetric verdicts
    const auto flipped = ball_equivalence_probe(two_sided(v, e, u), e);
    CHECK(flipped.verdict == disguised.verdict);

    // the padded factor tuples define different balls
    const auto padded_row = pad_square(make_Er(ctx), 6);
    const auto padded_col = pad_square(make_Ec(ctx), 6);
    const auto distinct = ball_equivalence_probe(padded_row, padded_col);
    CHECK(distinct.verdict == BallEquivalenceReport::Verdict::distinct);
    CHECK(distinct.mismatch_length >= 1);
    CHECK(distinct.witness_word.has_value());

    // shape mismatch is an immediate verdict
    const auto shape = ball_equivalence_probe(make_Er(ctx), make_Ec(ctx));
    CHECK(shape.verdict == BallEquivalenceReport::Verdict::distinct);
}

TEST_CASE("joint kernels of the concrete tuples") {
    const auto ctx = ctx_s2();
    CHECK(kernel_intersection(make_E(ctx)).empty());

    const auto ker_r = kernel_intersection(make_R(ctx));
    REQUIRE(ker_r.size() == 2);
    // the joint kernel of R is the first block coordinate: both tuples have
    // a zero first block column and invertible C pin the rest
    for (const auto& v : ker_r) CHECK(v.tail(3 * ctx.s).norm() <= 1e-10);

    // jets with invertible first-order data pin the joint kernel of Y at the
    // first block coordinate
    Rng rng(223);
    AutJet jet{{Complex(0, 0), Complex(0, 0)}, rng.gaussian(2, 2)};
    const auto ker_y = kernel_intersection(build_Y(jet, ctx));
    REQUIRE(static_cast<Eigen::Index>(ker_y.size()) == ctx.s);
    for (const auto& v : ker_y) CHECK(v.tail(3 * ctx.s).norm() <= 1e-10);

    // dimension is invariant under two-sided unitaries
    const MatrixTuple r = make_R(ctx);
    const Matrix u = rng.unitary(r.cols()), v = rng.unitary(r.rows());
    CHECK(kernel_intersection(two_sided(v, r, u)).size() == ker_r.size());
}
