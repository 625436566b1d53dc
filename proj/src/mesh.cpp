#include "edgelab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "edgelab/errors.hpp"

namespace edgelab {
namespace {

constexpr int kMaxLevel = 12;

// Smallest j whose polynomial step p log((j+1)/j) fits under kTipStep.
long junction_index(double p, long n_poly) {
    long j = static_cast<long>(std::ceil(1.0 / std::expm1(kTipStep / p)));
    while (j > 1 && p * std::log1p(1.0 / static_cast<double>(j - 1)) <= kTipStep) --j;
    while (p * std::log1p(1.0 / static_cast<double>(j)) > kTipStep) ++j;
    return std::clamp(j, 1L, std::max(1L, n_poly / 2));
}

std::vector<double> level_nodes(double r_max, int n, double p, int level) {
    if (level == 0) {
        std::vector<double> r(static_cast<std::size_t>(n));
        for (int j = 1; j <= n; ++j)
            r[j - 1] = r_max * std::pow(static_cast<double>(j) / n, p);
        r.back() = r_max;
        return r;
    }
    const std::vector<double> prev = level_nodes(r_max, n, p, level - 1);

    const long n_poly = static_cast<long>(n) << level;
    const long js = junction_index(p, n_poly);
    const double ratio = p * std::log1p(1.0 / static_cast<double>(js));
    const double r_js = r_max * std::pow(static_cast<double>(js) / n_poly, p);

    const double depth = p * std::log(static_cast<double>(n)) * std::pow(kTipGrowth, level);
    const double r_first = r_max * std::pow(1.0 / static_cast<double>(n_poly), p);
    double target = std::min(r_max * std::exp(-depth), 0.5 * r_first);
    target = std::min(target, 0.5 * prev.front());
    if (!(target > 1e-280)) throw InvalidArgument("level " + std::to_string(level) + " too deep");

    long k_geo = std::max(0L, static_cast<long>(std::ceil(std::log(r_js / target) / ratio)));
    const long poly_count = n_poly - js + 1;
    const long want = 2 * static_cast<long>(prev.size());
    if (poly_count + k_geo < want) k_geo = want - poly_count;

    std::vector<double> r;
    r.reserve(static_cast<std::size_t>(poly_count + k_geo));
    for (long i = k_geo; i >= 1; --i) r.push_back(r_js * std::exp(-ratio * static_cast<double>(i)));
    for (long j = js; j <= n_poly; ++j)
        r.push_back(r_max * std::pow(static_cast<double>(j) / n_poly, p));
    r.back() = r_max;
    return r;
}

}  // namespace

double GradedMesh::max_spacing() const {
    double h = nodes.front();
    for (std::size_t j = 1; j < nodes.size(); ++j) h = std::max(h, nodes[j] - nodes[j - 1]);
    return h;
}

GradedMesh build_graded(double r_max, int n_points, double grading_exponent, int level) {
    if (!(r_max > 0.0) || !std::isfinite(r_max)) throw InvalidArgument("r_max must be positive");
    if (n_points < 16) throw InvalidArgument("n_points must be at least 16");
    if (!(grading_exponent >= 1.0) || !std::isfinite(grading_exponent))
        throw InvalidArgument("grading_exponent must be >= 1");
    if (level < 0 || level > kMaxLevel)
        throw InvalidArgument("level must lie in [0, " + std::to_string(kMaxLevel) + "]");

    GradedMesh m;
    m.r_max = r_max;
    m.grading_exponent = grading_exponent;
    m.n_points = n_points;
    m.level = level;
    m.nodes = level_nodes(r_max, n_points, grading_exponent, level);

    const auto& r = m.nodes;
    const std::size_t n = r.size();
    m.quad_weights.resize(n);
    // trapezoid rule on 0 < r_0 < ... < r_max with the cell (0, r_0) folded into w_0
    m.quad_weights[0] = 0.5 * r[1];
    for (std::size_t j = 1; j + 1 < n; ++j) m.quad_weights[j] = 0.5 * (r[j + 1] - r[j - 1]);
    m.quad_weights[n - 1] = 0.5 * (r[n - 1] - r[n - 2]);
    return m;
}

double integrate(const GradedMesh& mesh, std::span<const double> samples) {
    if (samples.size() != mesh.size())
        throw InvalidArgument("integrate: expected " + std::to_string(mesh.size()) +
                              " samples, got " + std::to_string(samples.size()));
    double s = 0.0;
    for (std::size_t j = 0; j < samples.size(); ++j) {
        if (!std::isfinite(samples[j])) throw InvalidArgument("integrate: non-finite sample");
        s += mesh.quad_weights[j] * samples[j];
    }
    return s;
}

std::vector<GradedMesh> refinement_sequence(const GradedMesh& base, int depth) {
    if (depth < 2) throw InvalidArgument("refinement_sequence: depth must be >= 2");
    std::vector<GradedMesh> out;
    out.reserve(static_cast<std::size_t>(depth));
    for (int k = 0; k < depth; ++k)
        out.push_back(build_graded(base.r_max, base.n_points, base.grading_exponent, k));
    return out;
}

}  // namespace edgelab
