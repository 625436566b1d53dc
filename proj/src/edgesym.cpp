#include "edgelab/edgesym.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "edgelab/errors.hpp"
#include "edgelab/wspace.hpp"

namespace edgelab {
namespace {

struct Stencil {
    double cl, cc, cr;
};

// Three-point second difference at node j; node -1 is the ghost at r = 0.
Stencil second_difference(const std::vector<double>& r, std::size_t j) {
    const double hl = j == 0 ? r[0] : r[j] - r[j - 1];
    const double hr = r[j + 1] - r[j];
    return {2.0 / (hl * (hl + hr)), -2.0 / (hl * hr), 2.0 / (hr * (hl + hr))};
}

double coupling(const GradedMesh& mesh, double gamma, double sigma0) {
    const auto& r = mesh.nodes;
    const std::size_t j = r.size() - 2;
    return sigma0 * std::pow(r[j], 2.0 - gamma) * second_difference(r, j).cr *
           std::pow(r[j + 1], gamma);
}

// sigma0 (u'' - xi^2 u) at nodes 1..N-2 from plain samples.
std::vector<double> interior_action(const GradedMesh& mesh, double xi, double sigma0,
                                    const std::vector<double>& u) {
    const auto& r = mesh.nodes;
    std::vector<double> out(r.size() - 2);
    for (std::size_t j = 1; j + 1 < r.size(); ++j) {
        const Stencil c = second_difference(r, j);
        out[j - 1] = sigma0 * (c.cl * u[j - 1] + (c.cc - xi * xi) * u[j] + c.cr * u[j + 1]);
    }
    return out;
}

}  // namespace

std::string short_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string SpaceLabel::str(const char* letter) const {
    return std::string(letter) + "^{" + std::to_string(s) + "," + short_number(gamma) + "}";
}

Eigen::VectorXd EdgeSymbolOperator::active_weights() const {
    Eigen::VectorXd w(dim());
    for (Eigen::Index j = 0; j < dim(); ++j) w[j] = mesh.quad_weights[static_cast<std::size_t>(j)];
    return w;
}

Eigen::VectorXd EdgeSymbolOperator::apply(std::span<const double> v) const {
    const auto m = static_cast<std::size_t>(dim());
    if (v.size() != m && v.size() != m + 1)
        throw InvalidArgument("apply: expected " + std::to_string(m) + " or " +
                              std::to_string(m + 1) + " samples, got " + std::to_string(v.size()));
    const Eigen::Map<const Eigen::VectorXd> x(v.data(), static_cast<Eigen::Index>(m));
    Eigen::VectorXd y = matrix * x;
    if (v.size() == m + 1) y[dim() - 1] += boundary_coupling * v[m];
    return y;
}

std::string EdgeSymbolOperator::mapping_spaces() const {
    return domain_space.str() + "(R+) → " + codomain_space.str() + "(R+)";
}

EdgeSymbolOperator assemble(double gamma, double xi_norm, double sigma0, const GradedMesh& mesh,
                            int domain_order) {
    if (!(sigma0 > 0.0) || !std::isfinite(sigma0))
        throw InvalidArgument("sigma0 must be positive");
    if (!(xi_norm > 0.0) || !std::isfinite(xi_norm))
        throw InvalidArgument("xi_norm must be positive");
    if (!std::isfinite(gamma)) throw InvalidArgument("gamma must be finite");
    if (mesh.size() < 3) throw InvalidArgument("mesh too small");

    EdgeSymbolOperator op;
    op.gamma = gamma;
    op.xi_norm = xi_norm;
    op.sigma0 = sigma0;
    op.domain_space = {domain_order, gamma};
    op.codomain_space = {domain_order - 2, gamma - 2.0};
    op.mesh = mesh;

    const auto& r = mesh.nodes;
    const auto m = static_cast<Eigen::Index>(r.size() - 1);
    op.matrix = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        const Stencil c = second_difference(r, jj);
        const double left = sigma0 * std::pow(r[jj], 2.0 - gamma);
        if (j > 0) op.matrix(j, j - 1) = left * c.cl * std::pow(r[jj - 1], gamma);
        op.matrix(j, j) = sigma0 * (c.cc - xi_norm * xi_norm) * r[jj] * r[jj];
        if (j + 1 < m) op.matrix(j, j + 1) = left * c.cr * std::pow(r[jj + 1], gamma);
    }
    op.boundary_coupling = coupling(mesh, gamma, sigma0);
    return op;
}

EdgeSymbolOperator adjoint(const EdgeSymbolOperator& op) {
    EdgeSymbolOperator out = op;
    const Eigen::VectorXd w = op.active_weights();
    out.matrix = w.cwiseInverse().asDiagonal() * op.matrix.transpose() * w.asDiagonal();
    out.gamma = 2.0 - op.gamma;
    out.domain_space = {2 - op.domain_space.s, 2.0 - op.domain_space.gamma};
    out.codomain_space = {-op.domain_space.s, -op.domain_space.gamma};
    out.boundary_coupling = coupling(op.mesh, out.gamma, op.sigma0);
    return out;
}

ScalingAction::ScalingAction(double lambda_) : lambda(lambda_) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be positive");
}

std::function<double(double)> ScalingAction::apply(std::function<double(double)> u) const {
    const double l = lambda;
    const double f = std::pow(l, normalization);
    return [u = std::move(u), l, f](double r) { return f * u(l * r); };
}

double interpolate_cubic(std::span<const double> x, std::span<const double> y, double t) {
    const std::size_t n = x.size();
    if (n < 4 || y.size() != n) throw InvalidArgument("interpolate_cubic: need 4 matching nodes");
    const auto it = std::upper_bound(x.begin(), x.end(), t);
    std::size_t hi = static_cast<std::size_t>(it - x.begin());
    std::size_t lo = hi >= 2 ? hi - 2 : 0;
    lo = std::min(lo, n - 4);
    double s = 0.0;
    for (std::size_t k = lo; k < lo + 4; ++k) {
        double b = 1.0;
        for (std::size_t i = lo; i < lo + 4; ++i)
            if (i != k) b *= (t - x[i]) / (x[k] - x[i]);
        s += b * y[k];
    }
    return s;
}

std::vector<double> ScalingAction::apply(const GradedMesh& mesh,
                                         std::span<const double> samples) const {
    if (samples.size() != mesh.size()) throw InvalidArgument("ScalingAction: length mismatch");
    const double f = std::pow(lambda, normalization);
    std::vector<double> out(mesh.size());
    for (std::size_t j = 0; j < mesh.size(); ++j) {
        const double t = lambda * mesh.nodes[j];
        out[j] = t > mesh.r_max ? 0.0 : f * interpolate_cubic(mesh.nodes, samples, t);
    }
    return out;
}

double check_twisted_homogeneity(double gamma, double sigma0, double lambda,
                                 const GradedMesh& mesh) {
    if (!(sigma0 > 0.0)) throw InvalidArgument("sigma0 must be positive");
    const ScalingAction kappa(lambda);
    const auto& r = mesh.nodes;
    if (r.size() < 8) throw InvalidArgument("mesh too small");

    const std::vector<std::function<double(double)>> battery = {
        [](double x) { return std::exp(-3.0 * x); },
        [](double x) { return x * std::exp(-2.0 * x); },
        [](double x) { return (1.0 + x * x) * std::exp(-2.0 * x); },
    };
    // nodes carrying a full stencil
    const std::vector<double> inner(r.begin() + 1, r.end() - 1);
    const double scale = std::pow(lambda, 2.0 + ScalingAction::normalization);

    double worst = 0.0;
    for (const auto& f : battery) {
        const std::vector<double> u = sample(mesh, f);
        const std::vector<double> lhs = interior_action(mesh, lambda, sigma0, u);
        // size of the two parts separately, so a battery function in the kernel of A(lambda)
        // does not turn the ratio into 0/0
        const std::vector<double> d2 = interior_action(mesh, 0.0, sigma0, u);
        const std::vector<double> h =
            interior_action(mesh, 1.0, sigma0, sample(mesh, kappa.inverse().apply(f)));
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < inner.size(); ++j) {
            const double t = lambda * inner[j];
            if (t < inner.front() || t > inner.back()) continue;
            // second differences of O(1) data below this spacing are rounding noise
            const double arm = std::min(inner[j] - r[j], r[j + 2] - inner[j]);
            if (std::min(lambda, 1.0) * arm < kMinStep2) continue;
            const double rhs = scale * interpolate_cubic(inner, h, t);
            const double wt = mesh.quad_weights[j + 1] * std::pow(inner[j], 2.0 * (2.0 - gamma));
            num += wt * (lhs[j] - rhs) * (lhs[j] - rhs);
            const double size = std::abs(d2[j]) + sigma0 * lambda * lambda * std::abs(u[j + 1]);
            den += wt * size * size;
        }
        if (!(den > 0.0)) throw InvalidArgument("check_twisted_homogeneity: mesh too coarse");
        worst = std::max(worst, std::sqrt(num / den));
    }
    return worst;
}

}  // namespace edgelab
