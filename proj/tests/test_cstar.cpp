#include "freespec/ballmin.hpp"
#include "freespec/cstar.hpp"

#include <doctest.h>

using namespace freespec;

namespace {

PencilContext ctx_s2() {
    Matrix c1 = Matrix::Zero(2, 2);
    c1(0, 0) = 1;
    c1(1, 1) = 0.5;
    Matrix c2(2, 2);
    c2 << 0.75, 0.25, 0.25, 0.75;
    return PencilContext(c1, c2);
}

PencilContext ctx_commuting() {
    Matrix c = Matrix::Zero(2, 2);
    c(0, 0) = 1;
    c(1, 1) = 0.5;
    return PencilContext(c, c);
}

bool algebra_invariants_hold(const AlgebraBasis& alg, const std::vector<Matrix>& gens) {
    if (!alg.contains(Matrix::Identity(alg.n, alg.n))) return false;
    for (const auto& b : alg.basis)
        if (!alg.contains(Matrix(b.adjoint()))) return false;
    for (const auto& b : alg.basis)
        for (const auto& g : gens)
            if (!alg.contains(Matrix(b * g))) return false;
    return true;
}

}  // namespace

TEST_CASE("generated algebra dimensions") {
    const auto trivial = generated_star_algebra(1, {Matrix::Identity(1, 1)});
    CHECK(trivial.dimension() == 1);

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 1;
    d(1, 1) = 0.5;
    const auto diagonal = generated_star_algebra(2, {d});
    CHECK(diagonal.dimension() == 2);
    CHECK(algebra_invariants_hold(diagonal, {d}));

    const auto ctx = ctx_s2();
    const Matrix g1 = ctx.C1.adjoint() * ctx.C1;
    const Matrix g2 = ctx.C2.adjoint() * ctx.C2;
    const auto full = generated_star_algebra(2, {g1, g2});
    CHECK(full.dimension() == 4);
    CHECK(algebra_invariants_hold(full, {g1, g2}));
}

TEST_CASE("commutant dimensions and the double commutant") {
    CHECK(commutant(3, {}).dimension() == 9);

    const auto ctx = ctx_s2();
    const std::vector<Matrix> irr = {ctx.C1.adjoint() * ctx.C1, ctx.C2.adjoint() * ctx.C2};
    const auto comm = commutant(2, irr);
    CHECK(comm.dimension() == 1);  // irreducible gens leave only scalars

    // commutant elements actually commute with the generators
    for (const auto& k : comm.basis)
        for (const auto& g : irr) CHECK((k * g - g * k).norm() <= 1e-10);

    // double commutant returns the generated algebra (dimension + containment)
    Matrix d = Matrix::Zero(3, 3);
    d(0, 0) = 2;
    d(1, 1) = 2;
    d(2, 2) = -1;
    for (const std::vector<Matrix>& gens :
         {std::vector<Matrix>{d}, irr, std::vector<Matrix>{Matrix(kron(ctx.C1, ctx.C2))}}) {
        const Eigen::Index n = gens[0].rows();
        const auto alg = generated_star_algebra(n, gens);
        const auto first = commutant(n, gens);
        const auto second = commutant(n, first.basis);
        CHECK(second.dimension() == alg.dimension());
        for (const auto& b : alg.basis) CHECK(second.contains(b, 1e-7));
        // irreducibility iff scalar commutant
        CHECK((first.dimension() == 1) ==
              (alg.dimension() == static_cast<int>(n * n)));
    }
}

TEST_CASE("matrix-unit tuple commutant and reducing projections") {
    const auto ctx = ctx_s2();
    const auto f = build_F(ctx);
    const auto comm = commutant(12, {f.F[0], f.F[1]});
    CHECK(comm.dimension() == 2);

    const auto projections = reducing_projections(comm);
    REQUIRE(projections.size() == 4);
    Matrix upper = Matrix::Zero(12, 12);
    upper.topLeftCorner(6, 6) = Matrix::Identity(6, 6);
    const Matrix eye = Matrix::Identity(12, 12);
    bool saw_upper = false, saw_lower = false;
    for (const auto& p : projections) {
        if ((p - upper).norm() <= 1e-8) saw_upper = true;
        if ((p - (eye - upper)).norm() <= 1e-8) saw_lower = true;
    }
    CHECK(saw_upper);
    CHECK(saw_lower);
    CHECK(projections.front().norm() <= 1e-12);
    CHECK((projections.back() - eye).norm() <= 1e-12);
}

TEST_CASE("hypothesis checker across the fixture contexts") {
    const PencilContext s1(Matrix::Identity(1, 1), Matrix::Identity(1, 1));
    const auto rep1 = check_hypotheses(s1);
    CHECK(rep1.all_pass());
    CHECK(rep1.row_dim == 1);
    CHECK(rep1.row_sum_lambda_max == doctest::Approx(2.0));
    CHECK(rep1.row_sum_min_eig == doctest::Approx(1.0));

    const auto rep2 = check_hypotheses(ctx_s2());
    CHECK(rep2.all_pass());
    CHECK(rep2.row_dim == 4);
    CHECK(rep2.col_dim == 4);
    CHECK(rep2.row_sum_lambda_max > 1.0);
    CHECK(rep2.col_sum_lambda_max > 1.0);
    // the strict eigenvalue bound fails here; both facets are
    // reported separately rather than conflated
    CHECK(rep2.row_sum_min_eig < 0.0);

    const auto rep3 = check_hypotheses(ctx_commuting());
    CHECK(!rep3.all_pass());
    CHECK(rep3.row_dim == 2);
    CHECK(rep3.col_dim == 2);
    CHECK(rep3.c1_invertible);
}
