#include "swr/weights.hpp"

#include "swr/sampling.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>

using namespace swr;

TEST_SUITE("weights") {

TEST_CASE("w = 1 collapses to the identity") {
    const Subspace u = test::random_subspace(15, 3, 1);
    const WeightOperator op = make_weight(u, 1.0);
    CHECK(op.is_identity());
    const CMatrix m = test::random_complex(15, 4, 2);
    CHECK((op.apply(m, false) - m).norm() == 0.0);
}

TEST_CASE("default constructed operator is the identity") {
    const WeightOperator op;
    const CMatrix m = test::random_complex(9, 2, 3);
    CHECK((op.apply(m, false) - m).norm() == 0.0);
    CHECK((op.apply(m, true) - m).norm() == 0.0);
    CHECK((op.dense(9) - CMatrix::Identity(9, 9)).norm() == 0.0);
}

TEST_CASE("invalid weights are rejected") {
    const Subspace u = test::random_subspace(7, 2, 4);
    CHECK_THROWS_AS(make_weight(u, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_weight(u, -0.2), std::invalid_argument);
    CHECK_THROWS_AS(make_weight(u, 1.5), std::invalid_argument);
}

TEST_CASE("rank-deficient basis is rejected; slightly skewed basis is repaired") {
    CMatrix degenerate(6, 2);
    degenerate.col(0) = test::random_complex(6, 1, 5);
    degenerate.col(1) = degenerate.col(0) * Complex(2.0, 0.0);
    CHECK_THROWS_AS(make_weight(Subspace{degenerate}, 0.5), std::invalid_argument);

    Subspace skewed = test::random_subspace(10, 3, 6);
    skewed.basis.col(0) += 1e-4 * skewed.basis.col(1);
    const WeightOperator repaired = make_weight(skewed, 0.5);
    const CMatrix basis = repaired.subspace()->basis;
    CHECK((basis.adjoint() * basis - CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("dense materialization matches the textbook form w UU^H + (I - UU^H)") {
    const Eigen::Index dim = 13;
    const Subspace u = test::random_subspace(dim, 4, 7);
    const double w = 0.37;
    const WeightOperator op = make_weight(u, w);

    const CMatrix projector = u.basis * u.basis.adjoint();
    const CMatrix expected = w * projector + (CMatrix::Identity(dim, dim) - projector);
    CHECK((op.dense(dim) - expected).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("apply matches dense, forward and inverse") {
    const Eigen::Index dim = 11;
    const Subspace u = test::random_subspace(dim, 3, 8);
    const WeightOperator op = make_weight(u, 0.42);
    const CMatrix m = test::random_complex(dim, 5, 9);

    CHECK((op.apply(m, false) - op.dense(dim, false) * m).norm() <= 1e-12 * m.norm());
    CHECK((op.apply(m, true) - op.dense(dim, true) * m).norm() <= 1e-12 * m.norm());
    CHECK_THROWS_AS(op.apply(test::random_complex(dim + 1, 2, 10), false),
                    std::invalid_argument);
}

TEST_CASE("forward then inverse application is the identity") {
    const Eigen::Index dim = 15;
    for (double w : {0.1, 0.5, 0.9}) {
        const WeightOperator op = make_weight(test::random_subspace(dim, 5, 11), w);
        const CMatrix m = test::random_complex(dim, 6, 12);
        const CMatrix round = op.apply(op.apply(m, false), true);
        CHECK((round - m).norm() <= 1e-10 * m.norm());
    }
}

TEST_CASE("columns inside span(U) scale by w forward and 1/w inverse") {
    const Eigen::Index dim = 12;
    const Subspace u = test::random_subspace(dim, 4, 13);
    const double w = 0.3;
    const WeightOperator op = make_weight(u, w);

    const CMatrix inside = u.basis * test::random_complex(4, 3, 14);
    CHECK((op.apply(inside, false) - w * inside).norm() <= 1e-10 * inside.norm());
    CHECK((op.apply(inside, true) - inside / w).norm() <= 1e-10 * inside.norm());
}

TEST_CASE("dense operator properties: Hermitian, Q Qinv = I, spectrum") {
    const Eigen::Index dim = 31;  // 2n-1 with n = 16
    for (double w : {0.1, 0.5, 0.9}) {
        for (Eigen::Index rank : {1, 5}) {
            const WeightOperator op =
                make_weight(test::random_subspace(dim, rank, 100 + rank), w);
            const CMatrix q = op.dense(dim, false);
            const CMatrix qinv = op.dense(dim, true);

            CHECK((q - q.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
            CHECK((qinv - qinv.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
            CHECK((q * qinv - CMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff() <= 1e-10);

            Eigen::SelfAdjointEigenSolver<CMatrix> eig(q);
            const Eigen::VectorXd values = eig.eigenvalues();
            for (Eigen::Index i = 0; i < rank; ++i)
                CHECK(values[i] == doctest::Approx(w).epsilon(1e-8));
            for (Eigen::Index i = rank; i < dim; ++i)
                CHECK(values[i] == doctest::Approx(1.0).epsilon(1e-8));
        }
    }
}

TEST_CASE("weighted nuclear identity: Q = W = I") {
    const CMatrix x = test::random_complex(10, 10, 15);
    const auto [a, b] = weighted_nuclear_identity_check(x, WeightOperator(), WeightOperator());
    CHECK(a == doctest::Approx(b).epsilon(1e-14));
    CHECK(a == doctest::Approx(nuclear_norm(x)).epsilon(1e-12));
}

TEST_CASE("weighted nuclear identity: random 16x16, w = 0.5") {
    const Eigen::Index n = 16;
    const CMatrix x = test::random_complex(n, n, 16);
    const WeightOperator qop = make_weight(test::random_subspace(n, 4, 17), 0.5);
    const WeightOperator wop = make_weight(test::random_subspace(n, 4, 18), 0.5);
    const auto [a, b] = weighted_nuclear_identity_check(x, qop, wop);
    CHECK(std::abs(a - b) <= 1e-8 * a);
}

TEST_CASE("rank-1 slice inside both spans scales its nuclear norm by w1 w2") {
    const Eigen::Index n = 14;
    const Subspace u = test::random_subspace(n, 3, 19);
    const Subspace v = test::random_subspace(n, 3, 20);
    const CMatrix x = (u.basis.col(0)) * (v.basis.col(1)).adjoint() * Complex(2.0, 1.0);

    const auto [a, b] = weighted_nuclear_identity_check(x, make_weight(u, 0.5),
                                                        make_weight(v, 0.5));
    CHECK(a == doctest::Approx(0.25 * nuclear_norm(x)).epsilon(1e-10));
    CHECK(b == doctest::Approx(a).epsilon(1e-10));
}

TEST_CASE("substituted variable predicts the same observed data") {
    // sample(Qinv Xbar Winv) == sample(X) with Xbar = Q X W.
    const std::size_t n = 16;
    const Eigen::Index dim = static_cast<Eigen::Index>(2 * n - 1);
    const CMatrix x = test::random_complex(dim, dim, 21);
    const WeightOperator qop = make_weight(test::random_subspace(dim, 5, 22), 0.5);
    const WeightOperator wop = make_weight(test::random_subspace(dim, 5, 23), 0.5);

    const CMatrix xbar = qop.apply(wop.apply(x.adjoint(), false).adjoint(), false);
    const CMatrix back = qop.apply(wop.apply(xbar.adjoint(), true).adjoint(), true);

    const SourceMask mask = jittered_mask(n, 4, 24);
    const CVector via_x = sample({0.0, SliceDomain::MidpointOffset, x}, mask).values;
    const CVector via_back = sample({0.0, SliceDomain::MidpointOffset, back}, mask).values;
    CHECK((via_x - via_back).norm() <= 1e-10 * via_x.norm());
}

}  // TEST_SUITE
