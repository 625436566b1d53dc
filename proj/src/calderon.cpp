#include "edgelab/calderon.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "edgelab/errors.hpp"

namespace edgelab {
namespace {

PieceKind parse_kind(const std::string& s) {
    if (s == "constant") return PieceKind::constant;
    if (s == "linear") return PieceKind::linear;
    if (s == "exp") return PieceKind::exp;
    throw InvalidArgument("conductivity: unknown kind '" + s + "'");
}

const char* kind_name(PieceKind k) {
    switch (k) {
        case PieceKind::constant: return "constant";
        case PieceKind::linear: return "linear";
        case PieceKind::exp: return "exp";
    }
    return "constant";
}

std::size_t expected_params(PieceKind k) { return k == PieceKind::constant ? 1 : 2; }

}  // namespace

double ConductivityPiece::value(double r) const {
    switch (kind) {
        case PieceKind::constant: return params[0];
        case PieceKind::linear: return params[0] + params[1] * r;
        case PieceKind::exp: return params[0] * std::exp(params[1] * r);
    }
    return params[0];
}

ConductivityProfile::ConductivityProfile(std::vector<ConductivityPiece> pieces)
    : pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw InvalidArgument("conductivity: no pieces");
    constexpr double tol = 1e-12;
    if (std::abs(pieces_.front().r_lo) > tol || std::abs(pieces_.back().r_hi - 1.0) > tol)
        throw InvalidArgument("conductivity: pieces must cover [0, 1]");
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        auto& p = pieces_[i];
        if (!(p.r_lo < p.r_hi)) throw InvalidArgument("conductivity: empty piece interval");
        if (p.params.size() != expected_params(p.kind))
            throw InvalidArgument(std::string("conductivity: kind '") + kind_name(p.kind) +
                                  "' takes " + std::to_string(expected_params(p.kind)) +
                                  " params");
        for (double x : p.params)
            if (!std::isfinite(x)) throw InvalidArgument("conductivity: non-finite parameter");
        if (i + 1 < pieces_.size() && std::abs(p.r_hi - pieces_[i + 1].r_lo) > tol)
            throw InvalidArgument("conductivity: pieces must be contiguous");
        const bool positive = p.kind == PieceKind::exp
                                  ? p.params[0] > 0.0
                                  : p.value(p.r_lo) > 0.0 && p.value(p.r_hi) > 0.0;
        if (!positive) throw InvalidArgument("conductivity: sigma must stay positive");
    }
    pieces_.front().r_lo = 0.0;
    pieces_.back().r_hi = 1.0;
    for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
        const double a = pieces_[i].value(pieces_[i].r_hi);
        const double b = pieces_[i + 1].value(pieces_[i + 1].r_lo);
        continuity_.push_back(std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)));
    }
}

ConductivityProfile ConductivityProfile::constant(double c) {
    return ConductivityProfile({{0.0, 1.0, PieceKind::constant, {c}}});
}

ConductivityProfile ConductivityProfile::two_layer(double inner, double outer, double interface) {
    return ConductivityProfile({{0.0, interface, PieceKind::constant, {inner}},
                                {interface, 1.0, PieceKind::constant, {outer}}});
}

ConductivityProfile ConductivityProfile::from_json(const nlohmann::json& j) {
    const nlohmann::json& list = j.is_object() && j.contains("pieces") ? j.at("pieces") : j;
    if (!list.is_array()) throw InvalidArgument("conductivity: expected a list of pieces");
    std::vector<ConductivityPiece> pieces;
    try {
        for (const auto& e : list) {
            ConductivityPiece p;
            p.r_lo = e.at("r_lo").get<double>();
            p.r_hi = e.at("r_hi").get<double>();
            p.kind = parse_kind(e.at("kind").get<std::string>());
            const auto& params = e.at("params");
            if (params.is_number())
                p.params = {params.get<double>()};
            else
                p.params = params.get<std::vector<double>>();
            pieces.push_back(std::move(p));
        }
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("conductivity: ") + ex.what());
    }
    return ConductivityProfile(std::move(pieces));
}

ConductivityProfile ConductivityProfile::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read profile " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument("profile " + path.string() + ": " + ex.what());
    }
    return from_json(j);
}

nlohmann::json ConductivityProfile::to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& p : pieces_)
        out.push_back({{"r_lo", p.r_lo}, {"r_hi", p.r_hi}, {"kind", kind_name(p.kind)},
                       {"params", p.params}});
    return out;
}

double ConductivityProfile::operator()(double r) const {
    if (r < 0.0 || r > 1.0) throw InvalidArgument("conductivity: r outside [0, 1]");
    for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it)
        if (r >= it->r_lo) return it->value(r);
    return pieces_.front().value(r);
}

double ConductivityProfile::sigma_min() const {
    double s = pieces_.front().value(0.0);
    for (const auto& p : pieces_) s = std::min({s, p.value(p.r_lo), p.value(p.r_hi)});
    return s;
}

double ConductivityProfile::sigma_max() const {
    double s = pieces_.front().value(0.0);
    for (const auto& p : pieces_) s = std::max({s, p.value(p.r_lo), p.value(p.r_hi)});
    return s;
}

double solve_mode(const ConductivityProfile& profile, int n, const RadialMesh& mesh) {
    if (n < 0) throw InvalidArgument("solve_mode: n must be >= 0");
    if (mesh.n_steps < 16 || !(mesh.r_start > 0.0 && mesh.r_start < 1e-3))
        throw InvalidArgument("solve_mode: radial mesh out of range");

    // q = sigma r u'/u obeys dq/dt = (sigma^2 n^2 - q^2) / sigma in t = log r, q -> sigma n at
    // r = 0 and is continuous across jumps of sigma; lambda_n = q(1).
    const double nn = static_cast<double>(n) * n;
    const double span = -std::log(mesh.r_start);
    const double stiff = 2.0 * n * profile.sigma_max() / profile.sigma_min() + 1.0;
    const double dt_max = std::min(span / mesh.n_steps, 1.0 / stiff);

    double q = profile(mesh.r_start) * n;
    for (const auto& piece : profile.pieces()) {
        const double a = std::max(piece.r_lo, mesh.r_start);
        const double b = piece.r_hi;
        if (b <= a) continue;
        const double t0 = std::log(a), t1 = std::log(b);
        const int steps = std::max(4, static_cast<int>(std::ceil((t1 - t0) / dt_max)));
        const double dt = (t1 - t0) / steps;
        auto rhs = [&](double t, double y) {
            const double s = piece.value(std::exp(t));
            return (s * s * nn - y * y) / s;
        };
        for (int k = 0; k < steps; ++k) {
            const double t = t0 + k * dt;
            const double k1 = rhs(t, q);
            const double k2 = rhs(t + 0.5 * dt, q + 0.5 * dt * k1);
            const double k3 = rhs(t + 0.5 * dt, q + 0.5 * dt * k2);
            const double k4 = rhs(t + dt, q + dt * k3);
            q += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
    }
    return q;
}

DtNSpectrum dtn_spectrum(const ConductivityProfile& profile, int n_max, const RadialMesh& mesh) {
    if (n_max < 1) throw InvalidArgument("dtn_spectrum: N must be >= 1");
    DtNSpectrum s;
    for (int n = 0; n <= n_max; ++n) s.modes.emplace_back(n, solve_mode(profile, n, mesh));
    return s;
}

SpectrumComparison compare_spectra(const DtNSpectrum& a, const DtNSpectrum& b, double threshold) {
    if (a.modes.size() != b.modes.size())
        throw InvalidArgument("compare_spectra: mode ranges differ");
    SpectrumComparison c;
    for (std::size_t i = 0; i < a.modes.size(); ++i) {
        if (a.modes[i].first != b.modes[i].first)
            throw InvalidArgument("compare_spectra: mode ranges differ");
        c.max_abs_dev = std::max(c.max_abs_dev, std::abs(a.modes[i].second - b.modes[i].second));
    }
    c.distinguishable = c.max_abs_dev > threshold;
    return c;
}

}  // namespace edgelab
