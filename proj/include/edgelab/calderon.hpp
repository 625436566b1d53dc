#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace edgelab {

enum class PieceKind { constant, linear, exp };

/// sigma on [r_lo, r_hi]:  constant {c},  linear {a, b} -> a + b r,  exp {a, b} -> a e^{b r}.
struct ConductivityPiece {
    double r_lo = 0.0;
    double r_hi = 1.0;
    PieceKind kind = PieceKind::constant;
    std::vector<double> params;

    [[nodiscard]] double value(double r) const;
};

/// Radial conductivity on the unit disk, piecewise smooth and positive.
class ConductivityProfile {
public:
    explicit ConductivityProfile(std::vector<ConductivityPiece> pieces);

    static ConductivityProfile constant(double c);
    static ConductivityProfile two_layer(double inner, double outer, double interface);
    static ConductivityProfile from_json(const nlohmann::json& j);
    static ConductivityProfile load(const std::filesystem::path& path);

    [[nodiscard]] const std::vector<ConductivityPiece>& pieces() const { return pieces_; }
    /// continuity()[i] tells whether sigma is continuous between piece i and i + 1.
    [[nodiscard]] const std::vector<bool>& continuity() const { return continuity_; }
    /// Uses the piece containing r; at an interface the outer piece wins.
    [[nodiscard]] double operator()(double r) const;
    [[nodiscard]] double sigma_min() const;
    [[nodiscard]] double sigma_max() const;
    [[nodiscard]] nlohmann::json to_json() const;

private:
    std::vector<ConductivityPiece> pieces_;
    std::vector<bool> continuity_;
};

/// Radial discretization for the mode solves.
struct RadialMesh {
    int n_steps = 4096;     ///< steps in log r over [r_start, 1]
    double r_start = 1e-10; ///< where the r^n start value is imposed
};

/// lambda_n = sigma(1) u'(1) for (sigma r u')' - sigma n^2 u / r = 0, u regular at 0, u(1) = 1.
[[nodiscard]] double solve_mode(const ConductivityProfile& profile, int n,
                                const RadialMesh& mesh = {});

struct DtNSpectrum {
    std::vector<std::pair<int, double>> modes;  ///< (n, lambda_n), n = 0..N
};

[[nodiscard]] DtNSpectrum dtn_spectrum(const ConductivityProfile& profile, int n_max,
                                       const RadialMesh& mesh = {});

struct SpectrumComparison {
    double max_abs_dev = 0.0;
    bool distinguishable = false;
};

[[nodiscard]] SpectrumComparison compare_spectra(const DtNSpectrum& a, const DtNSpectrum& b,
                                                 double threshold = 1e-4);

}  // namespace edgelab
