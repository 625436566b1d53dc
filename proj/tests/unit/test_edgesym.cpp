#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "edgelab/edgesym.hpp"
#include "edgelab/errors.hpp"
#include "edgelab/wspace.hpp"

using namespace edgelab;

namespace {

// ||A v||_W for v = samples of r^{-gamma} e^{-xi r}
double kernel_residual(const GradedMesh& m, double gamma, double xi) {
    const EdgeSymbolOperator op = assemble(gamma, xi, 1.0, m);
    const auto v = sample(m, [&](double r) { return std::pow(r, -gamma) * std::exp(-xi * r); });
    const Eigen::VectorXd y = op.apply(v);
    return std::sqrt((op.active_weights().array() * y.array().square()).sum());
}

Eigen::VectorXd random_vec(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = g(rng);
    return v;
}

}  // namespace

TEST(Assemble, RejectsDegenerateParameters) {
    const auto m = build_graded(20.0, 32, 2.0, 0);
    EXPECT_THROW((void)assemble(0.25, 1.0, 0.0, m), InvalidArgument);
    EXPECT_THROW((void)assemble(0.25, 1.0, -1.0, m), InvalidArgument);
    EXPECT_THROW((void)assemble(0.25, 0.0, 1.0, m), InvalidArgument);
}

TEST(Assemble, MetadataAndLabels) {
    const auto m = build_graded(20.0, 32, 2.0, 0);
    const auto op = assemble(0.25, 1.0, 1.0, m);
    EXPECT_EQ(op.order, 2);
    EXPECT_EQ(op.dim(), static_cast<Eigen::Index>(m.size() - 1));
    EXPECT_EQ(op.domain_space.s, 2);
    EXPECT_EQ(op.codomain_space.s, 0);
    EXPECT_DOUBLE_EQ(op.codomain_space.gamma, -1.75);
    EXPECT_EQ(op.mapping_spaces(), "K^{2,0.25}(R+) → K^{0,-1.75}(R+)");
}

TEST(Assemble, LinearInSigma) {
    const auto m = build_graded(20.0, 64, 2.0, 1);
    const auto a1 = assemble(0.7, 1.3, 1.0, m);
    const auto a2 = assemble(0.7, 1.3, 2.0, m);
    EXPECT_TRUE(a2.matrix == 2.0 * a1.matrix);
}

TEST(Assemble, ExactKernelResidualShrinks) {
    const auto ms = refinement_sequence(build_graded(20.0, 256, 2.0, 0), 4);
    for (std::size_t k = 1; k < ms.size(); ++k) {
        const double r0 = kernel_residual(ms[k - 1], 0.25, 1.0);
        const double r1 = kernel_residual(ms[k], 0.25, 1.0);
        EXPECT_GE(r0 / r1, 3.5) << "level " << k;
        // order in the maximum spacing
        const double order = std::log(r0 / r1) / std::log(ms[k - 1].max_spacing() / ms[k].max_spacing());
        EXPECT_GE(order, 1.8) << "level " << k;
    }
}

TEST(Assemble, ActionOnLinearFunction) {
    // u = r, v = r^{-gamma} u; (d^2 - 1) r = -r, in codomain coordinates r^{2-gamma} (-sigma0 r)
    const auto m = build_graded(20.0, 128, 2.0, 1);
    for (double sigma0 : {1.0, 2.5}) {
        const double g = 0.25;
        const auto op = assemble(g, 1.0, sigma0, m);
        const auto v = sample(m, [&](double r) { return std::pow(r, -g) * r; });
        const Eigen::VectorXd y = op.apply(v);
        for (Eigen::Index j = 1; j < op.dim(); ++j) {
            const double r = m.nodes[static_cast<std::size_t>(j)];
            const double want = -sigma0 * std::pow(r, 2 - g) * r;
            EXPECT_NEAR(y[j], want, 1e-10 * std::abs(want) + 1e-12) << j;
        }
    }
}

TEST(Adjoint, DefiningIdentity) {
    std::mt19937_64 rng(1);
    const auto m = build_graded(20.0, 64, 2.0, 2);
    for (double g : {0.25, 1.0, 1.75}) {
        const auto op = assemble(g, 1.0, 1.3, m);
        const auto ad = adjoint(op);
        const Eigen::VectorXd w = op.active_weights();
        for (int t = 0; t < 100; ++t) {
            const Eigen::VectorXd u = random_vec(op.dim(), rng);
            const Eigen::VectorXd v = random_vec(op.dim(), rng);
            const double lhs = (w.array() * (op.matrix * u).array() * v.array()).sum();
            const double rhs = (w.array() * u.array() * (ad.matrix * v).array()).sum();
            const double scale = (w.array() * (op.matrix * u).array().abs() * v.array().abs()).sum();
            EXPECT_LE(std::abs(lhs - rhs), 1e-12 * scale);
        }
    }
}

TEST(Adjoint, Involution) {
    const auto m = build_graded(20.0, 64, 2.0, 1);
    const auto op = assemble(0.4, 1.0, 1.0, m);
    const auto back = adjoint(adjoint(op));
    const double scale = op.matrix.cwiseAbs().maxCoeff();
    EXPECT_LE((back.matrix - op.matrix).cwiseAbs().maxCoeff(), 1e-14 * scale);
    EXPECT_DOUBLE_EQ(back.gamma, op.gamma);
}

TEST(Adjoint, SpaceLabels) {
    const auto m = build_graded(20.0, 32, 2.0, 0);
    const auto ad = adjoint(assemble(0.25, 1.0, 1.0, m));
    EXPECT_EQ(ad.domain_space.s, 0);
    EXPECT_DOUBLE_EQ(ad.domain_space.gamma, 1.75);
    EXPECT_EQ(ad.codomain_space.s, -2);
    EXPECT_DOUBLE_EQ(ad.codomain_space.gamma, -0.25);
    EXPECT_DOUBLE_EQ(ad.gamma, 1.75);
}

TEST(Adjoint, EqualsAssemblyAtMirroredWeight) {
    const auto m = build_graded(20.0, 64, 2.0, 1);
    const auto ad = adjoint(assemble(0.3, 1.0, 1.0, m));
    const auto direct = assemble(1.7, 1.0, 1.0, m);
    const double scale = direct.matrix.cwiseAbs().maxCoeff();
    EXPECT_LE((ad.matrix - direct.matrix).cwiseAbs().maxCoeff(), 1e-12 * scale);
}

TEST(Scaling, UnitLambdaIsExact) {
    const auto m = build_graded(20.0, 64, 2.0, 1);
    for (double g : {0.25, 1.0, 1.75}) EXPECT_EQ(check_twisted_homogeneity(g, 1.0, 1.0, m), 0.0);
}

TEST(Scaling, RejectsNonPositiveLambda) {
    EXPECT_THROW(ScalingAction(0.0), InvalidArgument);
    EXPECT_THROW(ScalingAction(-2.0), InvalidArgument);
}

TEST(Scaling, FunctionAction) {
    const ScalingAction k(2.0);
    const auto f = k.apply([](double r) { return std::exp(-r); });
    EXPECT_DOUBLE_EQ(f(0.5), std::sqrt(2.0) * std::exp(-1.0));
    const auto back = k.inverse().apply(f);
    EXPECT_NEAR(back(0.7), std::exp(-0.7), 1e-15);
}

TEST(Scaling, IsometryUpToQuadrature) {
    const auto ms = refinement_sequence(build_graded(20.0, 128, 2.0, 0), 4);
    double prev = 1.0;
    for (const auto& m : ms) {
        const auto u = sample(m, [](double r) { return r * std::exp(-r); });
        const auto ku = ScalingAction(2.0).apply(m, u);
        const double err = std::abs(reference_norm(m, ku) / reference_norm(m, u) - 1);
        EXPECT_LT(err, prev);
        prev = err;
    }
    EXPECT_LT(prev, 1e-4);
}

TEST(Scaling, CubicInterpolationIsExactOnCubics) {
    const std::vector<double> x = {0.1, 0.4, 0.5, 1.1, 2.0, 3.5};
    std::vector<double> y;
    for (double t : x) y.push_back(1 - 2 * t + 0.5 * t * t * t);
    for (double t : {0.2, 0.45, 1.7, 3.0})
        EXPECT_NEAR(interpolate_cubic(x, y, t), 1 - 2 * t + 0.5 * t * t * t, 1e-13);
}

TEST(Homogeneity, DeviationShrinksWithRefinement) {
    // base 128 is still pre-asymptotic for gamma near 2 (first shrink 3.499)
    const auto ms = refinement_sequence(build_graded(20.0, 256, 2.0, 0), 4);
    for (double g : {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75}) {
        std::vector<double> dev;
        for (const auto& m : ms) dev.push_back(check_twisted_homogeneity(g, 1.0, 2.0, m));
        EXPECT_LE(dev.back(), 1e-4) << g;
        for (std::size_t k = 1; k < dev.size(); ++k) EXPECT_GE(dev[k - 1] / dev[k], 3.5) << g << " " << k;
    }
}

TEST(Homogeneity, HalfScaleAndSigma) {
    const auto ms = refinement_sequence(build_graded(20.0, 256, 2.0, 0), 4);
    for (double lam : {0.5, 3.0}) {
        std::vector<double> dev;
        for (const auto& m : ms) dev.push_back(check_twisted_homogeneity(0.6, 2.0, lam, m));
        for (std::size_t k = 1; k < dev.size(); ++k) EXPECT_GE(dev[k - 1] / dev[k], 3.5) << lam;
    }
}

TEST(Homogeneity, BatteryFunctionInKernelOfScaledSymbol) {
    // exp(-3r) is annihilated by d^2 - 9; the deviation must stay a discretization error
    const auto m = build_graded(20.0, 256, 2.0, 0);
    EXPECT_LE(check_twisted_homogeneity(0.6, 1.0, 3.0, m), 1e-3);
    EXPECT_NEAR(check_twisted_homogeneity(0.6, 1.0, 3.0, m),
                check_twisted_homogeneity(0.6, 1.0, 2.9, m), 1e-4);
}
