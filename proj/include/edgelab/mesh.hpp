#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace edgelab {

/// Nodes and trapezoid weights on (0, r_max], clustered at r = 0.
///
/// Level 0 is the plain polynomial grading r_j = r_max (j/n)^p, j = 1..n.
/// Level k > 0 uses n 2^k polynomial nodes, except that the innermost cells
/// (where one polynomial step exceeds `kTipStep` in log r) are swapped for a
/// geometric run with the same ratio.  That run reaches down to
/// r_max exp(-p log(n) kTipGrowth^k), so the tip depth in log r grows by a
/// fixed factor per level while the spacing in log r stays bounded.
struct GradedMesh {
    std::vector<double> nodes;
    std::vector<double> quad_weights;
    double r_max = 0.0;
    double grading_exponent = 1.0;
    int n_points = 0;  ///< base count n of the level-0 mesh
    int level = 0;

    [[nodiscard]] double r_min() const { return nodes.front(); }
    [[nodiscard]] std::size_t size() const { return nodes.size(); }
    /// Largest gap between consecutive nodes, counting (0, r_min).
    [[nodiscard]] double max_spacing() const;
};

/// Growth of the tip depth log(r_max / r_min) per refinement level.
inline constexpr double kTipGrowth = 1.75;
/// Bound on the log-spacing of the geometric run at the tip.
inline constexpr double kTipStep = 0.17328679513998632;  // log(2) / 4

[[nodiscard]] GradedMesh build_graded(double r_max, int n_points, double grading_exponent,
                                      int level);

/// Sum of quad_weights[j] * samples[j].
[[nodiscard]] double integrate(const GradedMesh& mesh, std::span<const double> samples);

/// Meshes at levels 0..depth-1 sharing the parameters of `base`.
[[nodiscard]] std::vector<GradedMesh> refinement_sequence(const GradedMesh& base, int depth);

/// Evaluate f at every node.
template <class F>
[[nodiscard]] std::vector<double> sample(const GradedMesh& mesh, F&& f) {
    std::vector<double> out(mesh.size());
    for (std::size_t j = 0; j < mesh.size(); ++j) out[j] = f(mesh.nodes[j]);
    return out;
}

}  // namespace edgelab
