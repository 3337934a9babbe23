#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace lw;
using lwtest::random_vec;

TEST_CASE("inner product on basis vectors")
{
    CHECK(inner(basis_vector(0), basis_vector(0)) == 1.0);
    CHECK(inner(basis_vector(5), basis_vector(5)) == -1.0);
    const Vec452 q = basis_vector(3) + basis_vector(5);
    CHECK(inner(q, q) == 0.0);
}

TEST_CASE("inner product is symmetric and bilinear")
{
    std::mt19937_64 rng(1);
    for (int k = 0; k < 20; ++k) {
        const Vec452 u = random_vec(rng), v = random_vec(rng), w = random_vec(rng);
        const double s = 0.37;
        CHECK(std::abs(inner(u, v) - inner(v, u)) <= 1e-12 * u.norm() * v.norm());
        const double lhs = inner(Vec452(u + s * w), v), rhs = inner(u, v) + s * inner(w, v);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1 + std::abs(lhs)));
    }
}

TEST_CASE("wedge action convention")
{
    const Vec452 e1 = basis_vector(0), e2 = basis_vector(1), e3 = basis_vector(2);
    CHECK((wedge_action(e1, e2, e1) - e2).norm() == 0.0);
    CHECK(wedge_action(e1, e2, e3).norm() == 0.0);
    CHECK((wedge_matrix(e1, e2) * e1 - wedge_action(e1, e2, e1)).norm() == 0.0);
}

TEST_CASE("wedge action is skew")
{
    std::mt19937_64 rng(2);
    for (int k = 0; k < 20; ++k) {
        const Vec452 u = random_vec(rng), v = random_vec(rng), x = random_vec(rng), y = random_vec(rng);
        const double s = inner(wedge_action(u, v, x), y) + inner(x, wedge_action(u, v, y));
        CHECK(std::abs(s) <= 1e-12 * u.norm() * v.norm() * x.norm() * y.norm());
    }
}

TEST_CASE("symmetric product evaluation")
{
    const Vec452 e1 = basis_vector(0), e2 = basis_vector(1);
    CHECK(evaluate_form(sym_outer(e1, e2), e1, e2) == doctest::Approx(0.5));
    const Mat6<double> W = sym_outer(e1, e1);
    std::mt19937_64 rng(3);
    const Vec452 x = random_vec(rng);
    CHECK(evaluate_form(W, x, x) == doctest::Approx(inner(e1, x) * inner(e1, x)));
    // minimal frame: 2 k+ . k- with k+ = q, k- = p gives q.p + p.q
    const SpaceFormFrame fr = euclidean_frame();
    const Mat6<double> W2 = 2 * sym_outer(fr.q, fr.p);
    CHECK((W2 - (fr.q * fr.p.transpose() + fr.p * fr.q.transpose())).norm() == 0.0);
}

TEST_CASE("orthogonality tests")
{
    CHECK(is_orthogonal(OrthoMap(OrthoMap::Identity()), 1e-12));
    OrthoMap D = OrthoMap::Identity();
    D(0, 0) = 2;
    CHECK_FALSE(is_orthogonal(D, 1e-9));
    CHECK_THROWS_AS(is_orthogonal(D, 0.0), std::invalid_argument);
}

TEST_CASE("orthogonal maps compose and invert")
{
    std::mt19937_64 rng(4);
    const OrthoMap A = lwtest::random_ortho(rng), B = lwtest::random_ortho(rng);
    CHECK(orthogonality_defect(OrthoMap(A * B)) < 1e-12);
    const OrthoMap Ai = ortho_inverse(A);
    CHECK((Ai * A - OrthoMap::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((Ai - Ai.transpose().transpose()).norm() == 0.0);
    CHECK((Ai - A.inverse()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("bilinear product of a conjugate pair is real")
{
    std::mt19937_64 rng(5);
    for (int k = 0; k < 10; ++k) {
        const CVec452 u = random_vec(rng).cast<cplx>() + cplx(0, 1) * random_vec(rng).cast<cplx>();
        const cplx uu = inner(u, CVec452(u.conjugate()));
        CHECK(std::abs(uu.imag()) < 1e-14 * u.squaredNorm());
        // bilinear, not hermitian: (u, i u) = i (u, u)
        CHECK(std::abs(inner(u, CVec452(cplx(0, 1) * u)) - cplx(0, 1) * inner(u, u)) < 1e-12 * u.squaredNorm());
    }
}

TEST_CASE("cayley transform of a skew generator is orthogonal")
{
    std::mt19937_64 rng(6);
    const Mat6<double> X = wedge_matrix(random_vec(rng), random_vec(rng));
    const Mat6<double> G = metric();
    CHECK((X.transpose() * G + G * X).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(orthogonality_defect(cayley(X)) < 1e-10);
}
