#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nlc/calculus.hpp"
#include "test_support.hpp"

using namespace nlc;
using nlc::test::kTwoPi;
using nlc::test::max_abs;
using nlc::test::max_abs_diff;

namespace {

const Grid2D kUnit(32, 32, 1.0, 1.0);
const Grid2D kRect(48, 32, 2.0, 1.5);

} // namespace

TEST(Grid, RejectsOddOrSmallSizes) {
    EXPECT_THROW(Grid2D(7, 8, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(Grid2D(9, 16, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(Grid2D(16, 16, 0.0, 1.0), std::invalid_argument);
    EXPECT_NO_THROW(Grid2D(8, 8, 1.0, 1.0));
}

TEST(LpNorm, TrivialValues) {
    EXPECT_EQ(lp_norm(ScalarField2D(kUnit), 2.0), 0.0);
    const Grid2D box(16, 16, kTwoPi, kTwoPi);
    EXPECT_NEAR(lp_norm(ScalarField2D(box, 1.0), 2.0), kTwoPi, 1e-13);
}

TEST(LpNorm, SineModeIsRootHalf) {
    auto f = ScalarField2D::sample(kUnit, [](double x, double) { return std::sin(kTwoPi * x); });
    EXPECT_NEAR(lp_norm(f, 2.0), std::sqrt(0.5), 1e-14);
    EXPECT_NEAR(lp_norm(f, kInfinity), 1.0, 1e-14);
    // int sin^4 = 3/8 over the unit box.
    EXPECT_NEAR(lp_norm(f, 4.0), std::pow(3.0 / 8.0, 0.25), 1e-13);
}

TEST(LpNorm, RejectsPBelowOne) {
    EXPECT_THROW(lp_norm(ScalarField2D(kUnit), 0.5), std::invalid_argument);
}

TEST(LpNorm, PythagorasOverStackedField) {
    std::mt19937_64 rng(7);
    const Grid2D g(16, 16, 1.0, 1.0);
    const ScalarField2D f = test::random_bandlimited(g, 3, rng);
    const ScalarField2D h = test::random_bandlimited(g, 3, rng);
    const Grid2D stacked_grid(16, 32, 1.0, 2.0);
    ScalarField2D stacked(stacked_grid);
    for (int j = 0; j < 16; ++j)
        for (int i = 0; i < 16; ++i) {
            stacked.at(i, j) = f.at(i, j);
            stacked.at(i, j + 16) = h.at(i, j);
        }
    const double lhs = std::pow(lp_norm(f, 2.0), 2) + std::pow(lp_norm(h, 2.0), 2);
    EXPECT_NEAR(lhs, std::pow(lp_norm(stacked, 2.0), 2), 1e-12 * lhs);
}

TEST(Gradient, ConstantAndSingleMode) {
    const VectorField2D g0 = gradient(ScalarField2D(kRect, 3.5));
    EXPECT_LT(max_abs(g0.x), 1e-13);
    EXPECT_LT(max_abs(g0.y), 1e-13);

    const double lx = kRect.lx();
    auto f = ScalarField2D::sample(kRect, [&](double x, double) { return std::sin(kTwoPi * x / lx); });
    auto fx = ScalarField2D::sample(kRect, [&](double x, double) { return kTwoPi / lx * std::cos(kTwoPi * x / lx); });
    const VectorField2D g = gradient(f);
    EXPECT_LT(max_abs_diff(g.x, fx), 1e-12);
    EXPECT_LT(max_abs(g.y), 1e-12);
}

TEST(Gradient, ProductMode) {
    const double lx = kRect.lx(), ly = kRect.ly();
    const double a = kTwoPi / lx, b = kTwoPi / ly;
    auto f = ScalarField2D::sample(kRect, [&](double x, double y) { return std::sin(a * x) * std::sin(b * y); });
    auto fx = ScalarField2D::sample(kRect, [&](double x, double y) { return a * std::cos(a * x) * std::sin(b * y); });
    auto fy = ScalarField2D::sample(kRect, [&](double x, double y) { return b * std::sin(a * x) * std::cos(b * y); });
    const VectorField2D g = gradient(f);
    EXPECT_LT(max_abs_diff(g.x, fx), 1e-12);
    EXPECT_LT(max_abs_diff(g.y, fy), 1e-12);
}

TEST(Laplacian, ConstantSineAndDivGrad) {
    EXPECT_LT(max_abs(laplacian(ScalarField2D(kRect, -2.0))), 1e-12);
    const double a = kTwoPi / kRect.lx();
    auto f = ScalarField2D::sample(kRect, [&](double x, double) { return std::sin(a * x); });
    EXPECT_LT(max_abs_diff(laplacian(f), -a * a * f), 1e-11);

    std::mt19937_64 rng(11);
    const ScalarField2D r = test::random_bandlimited(kRect, 5, rng);
    EXPECT_LT(max_abs_diff(divergence(gradient(r)), laplacian(r)), 1e-11);
}

TEST(Calculus, ShiftEquivariance) {
    std::mt19937_64 rng(3);
    const ScalarField2D f = test::random_bandlimited(kRect, 6, rng);
    const ScalarField2D s = f.shifted(5, -3);
    const ScalarField2D lap = laplacian(f);
    const VectorField2D grad = gradient(f);
    // Equal up to floating-point reordering inside the transform.
    EXPECT_LT(max_abs_diff(laplacian(s), lap.shifted(5, -3)), 1e-13 * max_abs(lap));
    EXPECT_LT(max_abs_diff(gradient(s).x, grad.x.shifted(5, -3)), 1e-13 * max_abs(grad.x));
    EXPECT_LT(max_abs_diff(gradient(s).y, grad.y.shifted(5, -3)), 1e-13 * max_abs(grad.y));
}

TEST(Leray, AnnihilatesGradients) {
    std::mt19937_64 rng(5);
    ScalarField2D f = test::random_bandlimited(kRect, 5, rng);
    const HelmholtzSplit h = leray_project(gradient(f));
    EXPECT_LT(max_abs(h.solenoidal.x), 1e-12);
    EXPECT_LT(max_abs(h.solenoidal.y), 1e-12);
    ScalarField2D centred = f;
    for (double& v : centred.values()) v -= f.mean();
    EXPECT_LT(max_abs_diff(h.potential, centred), 1e-12);
}

TEST(Leray, LeavesSolenoidalFieldsAlone) {
    std::mt19937_64 rng(9);
    const ScalarField2D psi = test::random_bandlimited(kRect, 5, rng);
    const VectorField2D gp = gradient(psi);
    const VectorField2D v(-1.0 * gp.y, gp.x);
    const HelmholtzSplit h = leray_project(v);
    EXPECT_LT(max_abs_diff(h.solenoidal.x, v.x), 1e-12);
    EXPECT_LT(max_abs_diff(h.solenoidal.y, v.y), 1e-12);
    EXPECT_LT(max_abs(h.potential), 1e-12);
}

TEST(Leray, TwoModeHelmholtzDecomposition) {
    const double lx = kRect.lx(), ly = kRect.ly();
    auto shear = ScalarField2D::sample(kRect, [&](double, double y) { return std::sin(kTwoPi * y / ly); });
    auto pot = ScalarField2D::sample(kRect, [&](double x, double) { return std::sin(kTwoPi * x / lx); });
    VectorField2D v = gradient(pot);
    v.x += shear;
    const HelmholtzSplit h = leray_project(v);
    EXPECT_LT(max_abs_diff(h.solenoidal.x, shear), 1e-12);
    EXPECT_LT(max_abs(h.solenoidal.y), 1e-12);
    EXPECT_LT(max_abs_diff(h.potential, pot), 1e-12);
}

TEST(Leray, IdempotentAndDivergenceFree) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const VectorField2D v(test::random_bandlimited(kRect, 8, rng), test::random_bandlimited(kRect, 8, rng));
        const VectorField2D w1 = project_solenoidal(v);
        const VectorField2D w2 = project_solenoidal(w1);
        const double scale = max_abs(w1.x) + max_abs(w1.y);
        EXPECT_LT(max_abs_diff(w1.x, w2.x), 1e-12 * scale);
        EXPECT_LT(max_abs_diff(w1.y, w2.y), 1e-12 * scale);
        EXPECT_LE(std::sqrt(l2_sq(divergence(w1))), 1e-10 * std::sqrt(l2_sq(v)));
    }
}

TEST(Leray, ZeroModePreserved) {
    const VectorField2D v(ScalarField2D(kUnit, 0.25), ScalarField2D(kUnit, -1.0));
    const VectorField2D w = project_solenoidal(v);
    EXPECT_NEAR(w.x.mean(), 0.25, 1e-14);
    EXPECT_NEAR(w.y.mean(), -1.0, 1e-14);
}

TEST(Helmholtz, InvertsShiftedLaplacian) {
    std::mt19937_64 rng(4);
    const ScalarField2D f = test::random_bandlimited(kRect, 6, rng);
    const ScalarField2D u = solve_helmholtz(f, 3.0);
    EXPECT_LT(max_abs_diff(3.0 * u - laplacian(u), f), 1e-11);
}
