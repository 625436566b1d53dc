#include "edgelab/wspace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "edgelab/errors.hpp"

namespace edgelab {
namespace {

void check_samples(const GradedMesh& mesh, std::span<const double> u, const char* who) {
    if (u.size() != mesh.size())
        throw InvalidArgument(std::string(who) + ": expected " + std::to_string(mesh.size()) +
                              " samples, got " + std::to_string(u.size()));
    for (double x : u)
        if (!std::isfinite(x)) throw InvalidArgument(std::string(who) + ": non-finite sample");
}

// Least-squares slope of y against x.
double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace

WeightedSpace::WeightedSpace(int s_, double gamma_, GradedMesh mesh_)
    : s(s_), gamma(gamma_), mesh(std::move(mesh_)) {
    if (s < 0 || s > 2) throw InvalidArgument("WeightedSpace: s must be 0, 1 or 2");
    if (!std::isfinite(gamma)) throw InvalidArgument("WeightedSpace: gamma must be finite");
    if (mesh.size() < 3) throw InvalidArgument("WeightedSpace: mesh too small");
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::member: return "member";
        case Verdict::divergent: return "divergent";
        case Verdict::borderline: return "borderline";
    }
    return "borderline";
}

std::vector<double> derivative(const GradedMesh& mesh, std::span<const double> u, int k) {
    check_samples(mesh, u, "derivative");
    if (k < 1 || k > 2) throw InvalidArgument("derivative: order must be 1 or 2");
    const auto& r = mesh.nodes;
    const std::size_t n = r.size();
    // Near r = 0 neighbouring nodes are closer than a difference quotient of O(1) data can
    // resolve, so stencil arms are widened to the rounding-optimal step.
    const double hmin = k == 1 ? kMinStep1 : kMinStep2;
    auto first_at_or_above = [&](double x) {
        return static_cast<std::size_t>(std::lower_bound(r.begin(), r.end(), x) - r.begin());
    };
    auto last_at_or_below = [&](double x) -> long {
        return static_cast<long>(std::upper_bound(r.begin(), r.end(), x) - r.begin()) - 1;
    };

    std::vector<double> d(n);
    for (std::size_t j = 0; j < n; ++j) {
        long il = last_at_or_below(r[j] - hmin);
        std::size_t ir = first_at_or_above(r[j] + hmin);
        if (il >= 0 && ir < n) {
            const std::size_t a = static_cast<std::size_t>(il);
            const double hl = r[j] - r[a], hr = r[ir] - r[j];
            d[j] = k == 1 ? -hr / (hl * (hl + hr)) * u[a] + (hr - hl) / (hl * hr) * u[j] +
                                hl / (hr * (hl + hr)) * u[ir]
                          : 2.0 * (u[a] / (hl * (hl + hr)) - u[j] / (hl * hr) +
                                   u[ir] / (hr * (hl + hr)));
            continue;
        }
        // one-sided on (j, b, c) with b, c on the same side
        std::size_t b, c;
        if (il < 0) {
            b = std::min(ir, n - 2);
            c = std::max(std::min(first_at_or_above(r[b] + hmin), n - 1), b + 1);
        } else {
            const long bl = std::max(il, 1L);
            b = static_cast<std::size_t>(bl);
            c = static_cast<std::size_t>(
                std::max(std::min(last_at_or_below(r[b] - hmin), bl - 1), 0L));
        }
        const double h1 = r[b] - r[j], h2 = r[c] - r[b];  // signed
        if (k == 1)
            d[j] = -(2 * h1 + h2) / (h1 * (h1 + h2)) * u[j] + (h1 + h2) / (h1 * h2) * u[b] -
                   h1 / (h2 * (h1 + h2)) * u[c];
        else
            d[j] = 2.0 * ((u[c] - u[b]) / h2 - (u[b] - u[j]) / h1) / (h1 + h2);
    }
    return d;
}

double weighted_norm(const WeightedSpace& space, std::span<const double> samples) {
    check_samples(space.mesh, samples, "weighted_norm");
    const auto& r = space.mesh.nodes;
    const auto& w = space.mesh.quad_weights;
    auto accumulate = [&](std::span<const double> v) {
        double s = 0.0;
        for (std::size_t j = 0; j < v.size(); ++j) {
            const double t = std::pow(r[j], -space.gamma) * v[j];
            s += w[j] * t * t;
        }
        return s;
    };
    double total = accumulate(samples);
    for (int k = 1; k <= space.s; ++k) total += accumulate(derivative(space.mesh, samples, k));
    return std::sqrt(total);
}

double reference_norm(const GradedMesh& mesh, std::span<const double> samples) {
    check_samples(mesh, samples, "reference_norm");
    double s = 0.0;
    for (std::size_t j = 0; j < samples.size(); ++j)
        s += mesh.quad_weights[j] * samples[j] * samples[j];
    return std::sqrt(s);
}

MembershipVerdict membership_test(const std::function<double(double)>& u_rule, int s, double gamma,
                                  std::span<const GradedMesh> meshes,
                                  const MembershipPolicy& policy) {
    if (meshes.size() < 3)
        throw InvalidArgument("membership_test: need at least 3 refinement levels");
    MembershipVerdict out;
    std::vector<double> x, y;
    for (const auto& m : meshes) {
        const WeightedSpace space(s, gamma, m);
        const double nrm = weighted_norm(space, sample(m, u_rule));
        out.norm_trace.emplace_back(m.level, nrm);
        x.push_back(-std::log(m.r_min()));
        y.push_back(2.0 * std::log(nrm));
    }
    const double first = out.norm_trace.front().second;
    const double last = out.norm_trace.back().second;
    if (last <= (1.0 + policy.tol_trend) * first) {
        out.verdict = Verdict::member;
        return out;
    }
    bool increasing = true;
    for (std::size_t i = 1; i < out.norm_trace.size(); ++i)
        increasing = increasing && out.norm_trace[i].second > out.norm_trace[i - 1].second;
    out.fitted_rate = slope(x, y);
    out.verdict = (increasing && *out.fitted_rate >= policy.rate_floor) ? Verdict::divergent
                                                                       : Verdict::borderline;
    return out;
}

std::vector<double> ConjugationMap::apply(std::span<const double> v) const {
    if (v.size() != forward.size()) throw InvalidArgument("ConjugationMap: length mismatch");
    std::vector<double> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) out[j] = forward[j] * v[j];
    return out;
}

std::vector<double> ConjugationMap::apply_inverse(std::span<const double> w) const {
    if (w.size() != inverse.size()) throw InvalidArgument("ConjugationMap: length mismatch");
    std::vector<double> out(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) out[j] = inverse[j] * w[j];
    return out;
}

ConjugationMap conjugation_to_reference(const WeightedSpace& space) {
    ConjugationMap m;
    m.forward.reserve(space.mesh.size());
    m.inverse.reserve(space.mesh.size());
    for (double r : space.mesh.nodes) {
        m.forward.push_back(std::pow(r, -space.gamma));
        m.inverse.push_back(std::pow(r, space.gamma));
    }
    return m;
}

Eigen::DiagonalMatrix<double, Eigen::Dynamic> gram_matrix(const WeightedSpace& space) {
    const auto n = static_cast<Eigen::Index>(space.mesh.size());
    Eigen::VectorXd d(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double t = std::pow(space.mesh.nodes[j], -space.gamma);
        d[j] = space.mesh.quad_weights[j] * t * t;
    }
    return Eigen::DiagonalMatrix<double, Eigen::Dynamic>(d);
}

}  // namespace edgelab
