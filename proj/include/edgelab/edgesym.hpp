#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "edgelab/mesh.hpp"

namespace edgelab {

/// (s, gamma) pair naming a weighted space; s may be negative for codomains.
struct SpaceLabel {
    int s = 0;
    double gamma = 0.0;

    [[nodiscard]] std::string str(const char* letter = "K") const;
};

/// Format a real the way labels show it ("0.25", "-1.75").
[[nodiscard]] std::string short_number(double x);

/// sigma0 (d^2/dr^2 - |xi|^2) conjugated to reference coordinates:
/// matrix = diag(r^{2-gamma}) L_h diag(r^gamma) on the active nodes r_0..r_{N-2}.
/// The node r_max carries a Dirichlet zero; below r_0 the stencil sees a zero ghost at r = 0.
struct EdgeSymbolOperator {
    Eigen::MatrixXd matrix;
    double gamma = 0.0;
    double xi_norm = 1.0;
    double sigma0 = 1.0;
    int order = 2;
    SpaceLabel domain_space;
    SpaceLabel codomain_space;
    GradedMesh mesh;
    /// Coefficient of the r_max sample in the last active row (used by `apply`).
    double boundary_coupling = 0.0;

    [[nodiscard]] Eigen::Index dim() const { return matrix.rows(); }
    /// Trapezoid weights restricted to the active nodes.
    [[nodiscard]] Eigen::VectorXd active_weights() const;
    /// Codomain coordinates on the active nodes.  `v` holds reference samples either on the
    /// active nodes (r_max value taken as zero) or on all nodes.
    [[nodiscard]] Eigen::VectorXd apply(std::span<const double> v) const;
    [[nodiscard]] std::string mapping_spaces() const;
};

[[nodiscard]] EdgeSymbolOperator assemble(double gamma, double xi_norm, double sigma0,
                                          const GradedMesh& mesh, int domain_order = 2);

/// Adjoint for the trapezoid inner products on domain and codomain: W^{-1} A^T W.
[[nodiscard]] EdgeSymbolOperator adjoint(const EdgeSymbolOperator& op);

/// kappa_lambda u(r) = lambda^{1/2} u(lambda r).
struct ScalingAction {
    double lambda = 1.0;
    static constexpr double normalization = 0.5;

    explicit ScalingAction(double lambda);
    [[nodiscard]] std::function<double(double)> apply(std::function<double(double)> u) const;
    [[nodiscard]] ScalingAction inverse() const { return ScalingAction(1.0 / lambda); }
    /// Acts on grid samples by cubic interpolation; zero beyond r_max.
    [[nodiscard]] std::vector<double> apply(const GradedMesh& mesh,
                                            std::span<const double> samples) const;
};

/// Cubic Lagrange interpolation of (x, y) at t, using the four nearest nodes.
[[nodiscard]] double interpolate_cubic(std::span<const double> x, std::span<const double> y,
                                       double t);

/// Largest deviation between A(lambda) and lambda^2 kappa A(1) kappa^{-1} over a battery of
/// smooth functions, in codomain reference coordinates, relative to sigma0 (|u''| + lambda^2 |u|).
[[nodiscard]] double check_twisted_homogeneity(double gamma, double sigma0, double lambda,
                                               const GradedMesh& mesh);

}  // namespace edgelab
