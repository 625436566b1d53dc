#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "edgelab/edgesym.hpp"
#include "edgelab/mesh.hpp"

namespace edgelab {

enum class CaseLabel { Case1, Case2, Case3, Case4_nonFredholm };

[[nodiscard]] std::string to_string(CaseLabel c);

/// Constants of the refinement-trend classification.
struct TrendPolicy {
    double decay_factor = 3.0;   ///< per-level shrink marking a kernel/cokernel direction
    double stable_change = 0.2;  ///< relative change between the two finest levels
    double angle_tol = 1e-2;     ///< alignment with the analytic profile, radians
    double smin_floor = 1e-8;    ///< bounded-below floor
    int tracked = 3;             ///< smallest singular values followed per level
};

/// Per-level numbers behind a report.  Not serialized.
struct LevelEvidence {
    int level = 0;
    Eigen::Index dim = 0;
    std::vector<double> smallest;          ///< ascending
    std::vector<double> kernel_angle;      ///< right vector vs r^{-gamma} e^{-|xi| r}
    std::vector<double> cokernel_angle;    ///< left vector vs r^{gamma-2} e^{-|xi| r}
};

struct FredholmReport {
    double gamma = 0.0;
    int kernel_dim = 0;
    int cokernel_dim = 0;
    std::vector<std::pair<int, double>> smin_trace;
    CaseLabel case_label = CaseLabel::Case3;
    std::string mapping_spaces;
    std::vector<LevelEvidence> evidence;
};

/// Singular values of A with respect to the trapezoid inner products, i.e. of W^{1/2} A W^{-1/2}.
struct WeightedSvd {
    Eigen::VectorXd singular_values;  ///< descending
    Eigen::MatrixXd left;             ///< columns in codomain reference coordinates
    Eigen::MatrixXd right;            ///< columns in domain reference coordinates
};

[[nodiscard]] WeightedSvd weighted_svd(const Eigen::MatrixXd& a, const Eigen::VectorXd& w_cod,
                                       const Eigen::VectorXd& w_dom);

/// Angle between x and y in the inner product sum w_j x_j y_j, folded into [0, pi/2].
[[nodiscard]] double weighted_angle(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                    const Eigen::VectorXd& w);

/// Reassembles `op`'s symbol on every mesh and classifies the singular-value trends.
/// Throws Unclassifiable when the trend is ambiguous.
[[nodiscard]] FredholmReport analyze(const EdgeSymbolOperator& op,
                                     std::span<const GradedMesh> meshes,
                                     const TrendPolicy& policy = {});

/// exp(-1 / (1 - (2t - 1)^2)) on (0, 1), zero elsewhere.
[[nodiscard]] double bump(double t);

/// Samples of bump(|xi| r) on every node.
[[nodiscard]] std::vector<double> default_phi(const GradedMesh& mesh, double xi_norm);

enum class BorderMode { boundary_row, coboundary_column };

[[nodiscard]] std::string to_string(BorderMode m);
[[nodiscard]] BorderMode parse_border_mode(const std::string& s);

/// Square system of size dim + 1.
///
/// boundary_row:       [ A   t ] [v  ]   [F]
///                     [ b^T 0 ] [tau] = [g],  b^T v = int phi(|xi| r) u(r) dr,  u = r^gamma v
/// coboundary_column:  [ A   c ] [v ]    [F]
///                     [ p^T 0 ] [mu] =  [0],  c = phi(|xi| r) in codomain coordinates
///
/// t lets the innermost equation absorb a defect (the discrete stencil otherwise fixes the
/// tip mode that the bordering is meant to pin); p is the matching tip pin on the adjoint
/// side, so the two modes are adjoint to each other.  Both are unit vectors in the
/// weighted coordinates.  `matrix` is in reference coordinates like `core.matrix`.
struct BorderedOperator {
    EdgeSymbolOperator core;
    BorderMode mode = BorderMode::boundary_row;
    std::vector<double> phi_samples;
    std::function<double(double)> phi_rule;  ///< phi as a function of t = |xi| r, if known
    Eigen::MatrixXd matrix;

    /// Diagonal that turns `matrix` into its weighted form: rows scaled by `row_scale`,
    /// columns divided by `col_scale`.
    [[nodiscard]] Eigen::VectorXd row_scale() const;
    [[nodiscard]] Eigen::VectorXd col_scale() const;
    [[nodiscard]] Eigen::MatrixXd weighted_matrix() const;
};

[[nodiscard]] BorderedOperator border(const EdgeSymbolOperator& op,
                                      std::span<const double> phi_samples, BorderMode mode);
[[nodiscard]] BorderedOperator border(const EdgeSymbolOperator& op,
                                      std::function<double(double)> phi_rule, BorderMode mode);

struct Certification {
    bool certified = false;
    double gamma = 0.0;
    BorderMode mode = BorderMode::boundary_row;
    std::vector<std::pair<int, double>> smin_trace;
    std::string mapping_spaces;
};

[[nodiscard]] Certification certify_invertible(const BorderedOperator& b,
                                               std::span<const GradedMesh> meshes,
                                               const TrendPolicy& policy = {});

struct BorderedSolution {
    Eigen::VectorXd v;         ///< domain reference coordinates on the active nodes
    std::optional<double> mu;  ///< coboundary mode only
    double tip_defect = 0.0;   ///< tau (boundary mode)
    double residual = 0.0;     ///< relative residual of the weighted bordered system
};

/// F is given in codomain reference coordinates on the active nodes.
[[nodiscard]] BorderedSolution solve_bordered(const BorderedOperator& b,
                                              const Certification& cert,
                                              std::span<const double> F, double g);

/// r^{-gamma} e^{-|xi| r} on the active nodes.
[[nodiscard]] Eigen::VectorXd kernel_profile(const EdgeSymbolOperator& op);
/// r^{gamma-2} e^{-|xi| r} on the active nodes.
[[nodiscard]] Eigen::VectorXd cokernel_profile(const EdgeSymbolOperator& op);

}  // namespace edgelab
