#pragma once

#include <Eigen/Core>
#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "edgelab/mesh.hpp"

namespace edgelab {

/// K^{s,gamma} on the half-line, sampled on a mesh.  s is 0, 1 or 2.
struct WeightedSpace {
    int s = 0;
    double gamma = 0.0;
    GradedMesh mesh;

    WeightedSpace(int s, double gamma, GradedMesh mesh);
};

enum class Verdict { member, divergent, borderline };

[[nodiscard]] std::string to_string(Verdict v);

struct MembershipVerdict {
    Verdict verdict = Verdict::borderline;
    std::vector<std::pair<int, double>> norm_trace;  ///< (level, norm)
    std::optional<double> fitted_rate;                ///< rho in norm^2 ~ r_min^{-rho}
};

/// Thresholds of the membership trend test.
struct MembershipPolicy {
    double tol_trend = 0.05;
    double rate_floor = 0.05;
};

/// sqrt( sum_{k<=s} sum_j w_j r_j^{-2 gamma} |D^k u|_j^2 ).
[[nodiscard]] double weighted_norm(const WeightedSpace& space, std::span<const double> samples);

/// Unweighted discrete L^2 norm (the reference space).
[[nodiscard]] double reference_norm(const GradedMesh& mesh, std::span<const double> samples);

/// Smallest stencil arm for first and second differences: cbrt(eps) and eps^{1/4}.
inline constexpr double kMinStep1 = 6.0554544523933395e-06;
inline constexpr double kMinStep2 = 1.2207031250000000e-04;

/// k-th derivative (k = 1, 2) by three-point differences on the graded nodes, centered in
/// the interior and one-sided at the ends.  Arms shorter than kMinStep* are widened.
[[nodiscard]] std::vector<double> derivative(const GradedMesh& mesh, std::span<const double> u,
                                             int k);

[[nodiscard]] MembershipVerdict membership_test(const std::function<double(double)>& u_rule, int s,
                                                double gamma,
                                                std::span<const GradedMesh> meshes,
                                                const MembershipPolicy& policy = {});

/// M_gamma : v -> r^{-gamma} v and its inverse, as diagonal factors.
struct ConjugationMap {
    std::vector<double> forward;  ///< r_j^{-gamma}
    std::vector<double> inverse;  ///< r_j^{gamma}

    [[nodiscard]] std::vector<double> apply(std::span<const double> v) const;
    [[nodiscard]] std::vector<double> apply_inverse(std::span<const double> w) const;
};

[[nodiscard]] ConjugationMap conjugation_to_reference(const WeightedSpace& space);

/// diag(w_j r_j^{-2 gamma}); the s = 0 norm squared is its quadratic form.
[[nodiscard]] Eigen::DiagonalMatrix<double, Eigen::Dynamic> gram_matrix(const WeightedSpace& space);

}  // namespace edgelab
