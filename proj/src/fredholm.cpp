#include "edgelab/fredholm.hpp"

#include <algorithm>
#include <cmath>

#include "edgelab/errors.hpp"

namespace edgelab {
namespace {

Eigen::VectorXd active_phi(const BorderedOperator& b) {
    Eigen::VectorXd p(b.core.dim());
    for (Eigen::Index j = 0; j < p.size(); ++j) p[j] = b.phi_samples[static_cast<std::size_t>(j)];
    return p;
}

double smallest_singular_value(const Eigen::MatrixXd& m) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues()[svd.singularValues().size() - 1];
}

double relative_change(const std::vector<std::pair<int, double>>& trace) {
    const double a = trace[trace.size() - 2].second;
    const double b = trace.back().second;
    return std::abs(b - a) / a;
}

bool strictly_decreasing(const std::vector<std::pair<int, double>>& trace) {
    for (std::size_t i = 1; i < trace.size(); ++i)
        if (!(trace[i].second < trace[i - 1].second)) return false;
    return true;
}

std::string mapping_text(const EdgeSymbolOperator& op, BorderMode mode) {
    const int s = op.domain_space.s;
    const double g = op.domain_space.gamma;
    const std::string dom = "W^{" + std::to_string(s) + "," + short_number(g) + "}";
    const std::string cod = "W^{" + std::to_string(s - 2) + "," + short_number(g - 2.0) + "}";
    if (mode == BorderMode::boundary_row)
        return dom + " → " + cod + " ⊕ H^{" + short_number(s + 0.5) + "}";
    return dom + " ⊕ H^{" + short_number(s - 2.5) + "} → " + cod;
}

}  // namespace

std::string to_string(CaseLabel c) {
    switch (c) {
        case CaseLabel::Case1: return "Case1";
        case CaseLabel::Case2: return "Case2";
        case CaseLabel::Case3: return "Case3";
        case CaseLabel::Case4_nonFredholm: return "Case4_nonFredholm";
    }
    return "Case3";
}

std::string to_string(BorderMode m) {
    return m == BorderMode::boundary_row ? "boundary_row" : "coboundary_column";
}

BorderMode parse_border_mode(const std::string& s) {
    if (s == "boundary_row" || s == "boundary" || s == "row") return BorderMode::boundary_row;
    if (s == "coboundary_column" || s == "coboundary" || s == "column")
        return BorderMode::coboundary_column;
    throw InvalidArgument("unknown border mode '" + s + "'");
}

WeightedSvd weighted_svd(const Eigen::MatrixXd& a, const Eigen::VectorXd& w_cod,
                         const Eigen::VectorXd& w_dom) {
    const Eigen::VectorXd sc = w_cod.cwiseSqrt();
    const Eigen::VectorXd sd = w_dom.cwiseSqrt();
    const Eigen::MatrixXd b = sc.asDiagonal() * a * sd.cwiseInverse().asDiagonal();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
    WeightedSvd out;
    out.singular_values = svd.singularValues();
    out.left = sc.cwiseInverse().asDiagonal() * svd.matrixU();
    out.right = sd.cwiseInverse().asDiagonal() * svd.matrixV();
    return out;
}

double weighted_angle(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& w) {
    const Eigen::VectorXd sw = w.cwiseSqrt();
    const Eigen::VectorXd a = sw.cwiseProduct(x).normalized();
    const Eigen::VectorXd b = sw.cwiseProduct(y).normalized();
    const double c = std::abs(a.dot(b));
    const double s = (a - a.dot(b) * b).norm();
    return std::atan2(s, c);
}

Eigen::VectorXd kernel_profile(const EdgeSymbolOperator& op) {
    Eigen::VectorXd k(op.dim());
    for (Eigen::Index j = 0; j < k.size(); ++j) {
        const double r = op.mesh.nodes[static_cast<std::size_t>(j)];
        k[j] = std::pow(r, -op.gamma) * std::exp(-op.xi_norm * r);
    }
    return k;
}

Eigen::VectorXd cokernel_profile(const EdgeSymbolOperator& op) {
    Eigen::VectorXd k(op.dim());
    for (Eigen::Index j = 0; j < k.size(); ++j) {
        const double r = op.mesh.nodes[static_cast<std::size_t>(j)];
        k[j] = std::pow(r, op.gamma - 2.0) * std::exp(-op.xi_norm * r);
    }
    return k;
}

FredholmReport analyze(const EdgeSymbolOperator& op, std::span<const GradedMesh> meshes,
                       const TrendPolicy& policy) {
    if (meshes.size() < 3) throw InvalidArgument("analyze: need at least 3 refinement levels");
    FredholmReport rep;
    rep.gamma = op.gamma;
    rep.mapping_spaces = op.mapping_spaces();

    for (const auto& mesh : meshes) {
        const EdgeSymbolOperator a =
            assemble(op.gamma, op.xi_norm, op.sigma0, mesh, op.domain_space.s);
        const Eigen::VectorXd w = a.active_weights();
        const WeightedSvd svd = weighted_svd(a.matrix, w, w);
        const Eigen::VectorXd kp = kernel_profile(a);
        const Eigen::VectorXd cp = cokernel_profile(a);

        LevelEvidence ev;
        ev.level = mesh.level;
        ev.dim = a.dim();
        const Eigen::Index n = svd.singular_values.size();
        const Eigen::Index t = std::min<Eigen::Index>(policy.tracked, n);
        for (Eigen::Index i = 0; i < t; ++i) {
            const Eigen::Index col = n - 1 - i;
            ev.smallest.push_back(svd.singular_values[col]);
            ev.kernel_angle.push_back(weighted_angle(svd.right.col(col), kp, w));
            ev.cokernel_angle.push_back(weighted_angle(svd.left.col(col), cp, w));
        }
        rep.smin_trace.emplace_back(mesh.level, ev.smallest.front());
        rep.evidence.push_back(std::move(ev));
    }

    const auto& ev = rep.evidence;
    const std::size_t t = ev.front().smallest.size();
    const std::size_t last = ev.size() - 1;
    auto aligned = [&](const std::vector<double> LevelEvidence::*angles, std::size_t i) {
        const double fine = (ev[last].*angles)[i];
        const double prev = (ev[last - 1].*angles)[i];
        return fine <= policy.angle_tol && fine <= prev;
    };

    int decaying = 0, unexplained = 0;
    for (std::size_t i = 0; i < t; ++i) {
        bool decays = true;
        for (std::size_t k = 1; k < ev.size(); ++k)
            decays = decays && ev[k - 1].smallest[i] >= policy.decay_factor * ev[k].smallest[i];
        if (!decays) continue;
        ++decaying;
        const bool right = aligned(&LevelEvidence::kernel_angle, i);
        const bool left = aligned(&LevelEvidence::cokernel_angle, i);
        if (right && !left)
            ++rep.kernel_dim;
        else if (left && !right)
            ++rep.cokernel_dim;
        else
            ++unexplained;
    }

    const std::string where = "gamma=" + short_number(op.gamma) + ": ";
    if (decaying > 0) {
        if (unexplained == 0 && rep.kernel_dim + rep.cokernel_dim == 1) {
            rep.case_label = rep.kernel_dim == 1 ? CaseLabel::Case1 : CaseLabel::Case2;
            return rep;
        }
        if (unexplained == decaying && strictly_decreasing(rep.smin_trace)) {
            rep.kernel_dim = rep.cokernel_dim = 0;
            rep.case_label = CaseLabel::Case4_nonFredholm;
            return rep;
        }
        throw Unclassifiable(where + std::to_string(decaying) +
                             " decaying directions, kernel/cokernel alignment inconclusive");
    }
    if (relative_change(rep.smin_trace) <= policy.stable_change &&
        rep.smin_trace.back().second > policy.smin_floor) {
        rep.case_label = CaseLabel::Case3;
        return rep;
    }
    if (strictly_decreasing(rep.smin_trace)) {
        rep.case_label = CaseLabel::Case4_nonFredholm;
        return rep;
    }
    throw Unclassifiable(where + "smallest singular value neither stable nor decaying");
}

double bump(double t) {
    if (!(t > 0.0 && t < 1.0)) return 0.0;
    const double x = 2.0 * t - 1.0;
    return std::exp(-1.0 / (1.0 - x * x));
}

std::vector<double> default_phi(const GradedMesh& mesh, double xi_norm) {
    return sample(mesh, [xi_norm](double r) { return bump(xi_norm * r); });
}

Eigen::VectorXd BorderedOperator::row_scale() const {
    Eigen::VectorXd s(core.dim() + 1);
    s.head(core.dim()) = core.active_weights().cwiseSqrt();
    s[core.dim()] = 1.0;
    return s;
}

Eigen::VectorXd BorderedOperator::col_scale() const { return row_scale(); }

Eigen::MatrixXd BorderedOperator::weighted_matrix() const {
    return row_scale().asDiagonal() * matrix * col_scale().cwiseInverse().asDiagonal();
}

BorderedOperator border(const EdgeSymbolOperator& op, std::span<const double> phi_samples,
                        BorderMode mode) {
    const auto m = op.dim();
    const auto n_nodes = static_cast<std::size_t>(m) + 1;
    if (phi_samples.size() != n_nodes && phi_samples.size() != static_cast<std::size_t>(m))
        throw InvalidArgument("border: phi must be sampled on the mesh nodes");
    BorderedOperator b;
    b.core = op;
    b.mode = mode;
    b.phi_samples.assign(phi_samples.begin(), phi_samples.end());
    b.phi_samples.resize(n_nodes, 0.0);
    for (double x : b.phi_samples)
        if (!std::isfinite(x)) throw InvalidArgument("border: non-finite phi sample");

    const Eigen::VectorXd w = op.active_weights();
    const Eigen::VectorXd phi = active_phi(b);
    Eigen::VectorXd decay(m);
    for (Eigen::Index j = 0; j < m; ++j)
        decay[j] = std::exp(-op.xi_norm * op.mesh.nodes[static_cast<std::size_t>(j)]);
    const double ip = (w.array() * phi.array() * decay.array()).sum();
    const double nphi = std::sqrt((w.array() * phi.array().square()).sum());
    const double nk = std::sqrt((w.array() * decay.array().square()).sum());
    if (!(std::abs(ip) > 1e-8 * nphi * nk))
        throw InvalidArgument("border: phi is numerically orthogonal to the kernel profile");

    b.matrix = Eigen::MatrixXd::Zero(m + 1, m + 1);
    b.matrix.topLeftCorner(m, m) = op.matrix;
    const auto& r = op.mesh.nodes;
    if (mode == BorderMode::boundary_row) {
        for (Eigen::Index j = 0; j < m; ++j)
            b.matrix(m, j) = w[j] * phi[j] * std::pow(r[static_cast<std::size_t>(j)], op.gamma);
        b.matrix(0, m) = 1.0 / std::sqrt(w[0]);
    } else {
        for (Eigen::Index j = 0; j < m; ++j)
            b.matrix(j, m) = std::pow(r[static_cast<std::size_t>(j)], 2.0 - op.gamma) * phi[j];
        b.matrix(m, 0) = std::sqrt(w[0]);
    }
    return b;
}

BorderedOperator border(const EdgeSymbolOperator& op, std::function<double(double)> phi_rule,
                        BorderMode mode) {
    const double xi = op.xi_norm;
    BorderedOperator b =
        border(op, sample(op.mesh, [&](double r) { return phi_rule(xi * r); }), mode);
    b.phi_rule = std::move(phi_rule);
    return b;
}

Certification certify_invertible(const BorderedOperator& b, std::span<const GradedMesh> meshes,
                                 const TrendPolicy& policy) {
    if (meshes.size() < 3) throw InvalidArgument("certify_invertible: need at least 3 levels");
    if (!b.phi_rule) throw InvalidArgument("certify_invertible: phi must be given as a rule");
    Certification c;
    c.gamma = b.core.gamma;
    c.mode = b.mode;
    c.mapping_spaces = mapping_text(b.core, b.mode);
    for (const auto& mesh : meshes) {
        const EdgeSymbolOperator a = assemble(b.core.gamma, b.core.xi_norm, b.core.sigma0, mesh,
                                              b.core.domain_space.s);
        const BorderedOperator bk = border(a, b.phi_rule, b.mode);
        c.smin_trace.emplace_back(mesh.level, smallest_singular_value(bk.weighted_matrix()));
    }
    const double fine = c.smin_trace.back().second;
    const double prev = c.smin_trace[c.smin_trace.size() - 2].second;
    c.certified = relative_change(c.smin_trace) <= policy.stable_change &&
                  fine > policy.smin_floor && prev > policy.smin_floor;
    return c;
}

BorderedSolution solve_bordered(const BorderedOperator& b, const Certification& cert,
                                std::span<const double> F, double g) {
    if (!cert.certified) throw NotCertified("solve_bordered: operator is not certified");
    if (cert.mode != b.mode || cert.gamma != b.core.gamma)
        throw NotCertified("solve_bordered: certification belongs to a different operator");
    const auto m = b.core.dim();
    if (F.size() != static_cast<std::size_t>(m))
        throw InvalidArgument("solve_bordered: F must have " + std::to_string(m) + " entries");

    const Eigen::MatrixXd mw = b.weighted_matrix();
    const Eigen::VectorXd rs = b.row_scale();
    Eigen::VectorXd rhs(m + 1);
    for (Eigen::Index j = 0; j < m; ++j) rhs[j] = rs[j] * F[static_cast<std::size_t>(j)];
    rhs[m] = g;

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(mw);
    Eigen::VectorXd z = lu.solve(rhs);
    z += lu.solve(rhs - mw * z);  // one refinement sweep

    BorderedSolution out;
    const double scale = rhs.norm();
    out.residual = scale > 0.0 ? (mw * z - rhs).norm() / scale : (mw * z).norm();
    out.v = z.head(m).cwiseQuotient(b.col_scale().head(m));
    if (b.mode == BorderMode::boundary_row)
        out.tip_defect = z[m];
    else
        out.mu = z[m];
    return out;
}

}  // namespace edgelab
