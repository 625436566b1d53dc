#include "edgelab/algebraic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "edgelab/errors.hpp"

namespace edgelab {
namespace {

// Uniform on [-1, 1) from raw engine bits, so instances do not depend on the
// standard library's distribution implementation.
double uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = uniform(rng);
    return m;
}

Eigen::MatrixXd random_spd(int n, std::mt19937_64& rng) {
    const Eigen::MatrixXd m = random_matrix(n, n, rng);
    return m * m.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

double rel_dev(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return max_abs(a - b) / std::max(1.0, max_abs(b));
}

Eigen::MatrixXd block_gram(const Eigen::MatrixXd& gj, const Eigen::MatrixXd& go) {
    const auto dj = gj.rows(), dO = go.rows();
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dj + dO, dj + dO);
    g.topLeftCorner(dj, dj) = gj;
    g.bottomRightCorner(dO, dO) = go;
    return g;
}

}  // namespace

SplitSequence build_random_split(int dim_J, int dim_O, std::uint64_t seed,
                                 const std::optional<Eigen::MatrixXd>& gram_O) {
    if (dim_J < 1 || dim_O < 1) throw InvalidArgument("build_random_split: dims must be >= 1");
    std::mt19937_64 rng(seed);
    SplitSequence s;
    s.dim_J = dim_J;
    s.dim_O = dim_O;
    s.gram_J = random_spd(dim_J, rng);
    if (gram_O) {
        if (gram_O->rows() != dim_O || gram_O->cols() != dim_O)
            throw InvalidArgument("build_random_split: gram_O has the wrong size");
        s.gram_O = *gram_O;
    } else {
        s.gram_O = random_spd(dim_O, rng);
    }
    const int n = dim_J + dim_O;
    // basis change of A kept away from singular
    const Eigen::MatrixXd t = Eigen::MatrixXd::Identity(n, n) + random_matrix(n, n, rng) / (2.0 * n);
    const Eigen::MatrixXd ti = t.inverse();
    s.inclusion = t.leftCols(dim_J);
    s.section = t.rightCols(dim_O);
    s.retraction = ti.topRows(dim_J);
    s.quotient = ti.bottomRows(dim_O);
    s.gram_A = ti.transpose() * block_gram(s.gram_J, s.gram_O) * ti;
    return s;
}

double split_invariant_deviation(const SplitSequence& s) {
    const auto ij = Eigen::MatrixXd::Identity(s.dim_J, s.dim_J);
    const auto io = Eigen::MatrixXd::Identity(s.dim_O, s.dim_O);
    double d = 0.0;
    d = std::max(d, rel_dev(s.retraction * s.inclusion, ij));
    d = std::max(d, rel_dev(s.quotient * s.section, io));
    d = std::max(d, max_abs(s.quotient * s.inclusion));
    d = std::max(d, max_abs(s.retraction * s.section));
    d = std::max(d, rel_dev(s.inclusion.transpose() * s.gram_A * s.inclusion, s.gram_J));
    d = std::max(d, rel_dev(s.section.transpose() * s.gram_A * s.section, s.gram_O));
    d = std::max(d, max_abs(s.inclusion.transpose() * s.gram_A * s.section) /
                        std::max(1.0, max_abs(s.gram_A)));
    d = std::max(d, rel_dev(s.gram_A, s.gram_A.transpose()));
    return d;
}

Eigen::MatrixXd random_isometry(const SplitSequence& s1, const SplitSequence& s2,
                                std::uint64_t seed) {
    if (s1.dim_J != s2.dim_J) throw InvalidArgument("random_isometry: dim_J differs");
    std::mt19937_64 rng(seed);
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_matrix(s1.dim_J, s1.dim_J, rng));
    const Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd l1 = s1.gram_J.llt().matrixL();
    const Eigen::MatrixXd l2 = s2.gram_J.llt().matrixL();
    // phi^T G2 phi = L1 Q^T L2^{-1} L2 L2^T L2^{-T} Q L1^T = G1
    return l2.transpose().triangularView<Eigen::Upper>().solve(q * l1.transpose());
}

Eigen::MatrixXd lift_isometry(const SplitSequence& s1, const SplitSequence& s2,
                              const Eigen::MatrixXd& phi) {
    return s2.inclusion * phi * s1.retraction + s2.section * s1.quotient;
}

SplitCheck verify_split_isometry(const SplitSequence& s1, const SplitSequence& s2,
                                 const Eigen::MatrixXd& phi) {
    if (s1.dim_J != s2.dim_J || s1.dim_O != s2.dim_O)
        throw InvalidArgument("verify_split_isometry: dimension mismatch");
    if (phi.rows() != s2.dim_J || phi.cols() != s1.dim_J)
        throw InvalidArgument("verify_split_isometry: phi has the wrong shape");
    if (rel_dev(s1.gram_O, s2.gram_O) > 1e-12)
        throw InvalidArgument("verify_split_isometry: the sequences have different quotients");
    if (rel_dev(phi.transpose() * s2.gram_J * phi, s1.gram_J) > 1e-12)
        throw InvalidArgument("verify_split_isometry: phi is not an isometry");

    const Eigen::MatrixXd psi = lift_isometry(s1, s2, phi);
    double d = 0.0;

    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(psi);
    const auto& sv = svd.singularValues();
    if (!(sv[sv.size() - 1] > 1e-12 * sv[0])) d = 1.0;  // not bijective

    d = std::max(d, rel_dev(psi.transpose() * s2.gram_A * psi, s1.gram_A));

    std::mt19937_64 rng(0);
    for (int k = 0; k < 100; ++k) {
        const Eigen::VectorXd a = random_matrix(s1.dim_A(), 1, rng);
        const double na = std::sqrt(a.dot(s1.gram_A * a));
        const Eigen::VectorXd b = psi * a;
        const double nb = std::sqrt(b.dot(s2.gram_A * b));
        d = std::max(d, std::abs(nb - na) / na);
    }

    // induced quotient map is the identity on O, and J1 lands in J2 through phi
    d = std::max(d, rel_dev(s2.quotient * psi * s1.section,
                            Eigen::MatrixXd::Identity(s1.dim_O, s1.dim_O)));
    d = std::max(d, max_abs(s2.quotient * psi * s1.inclusion));
    d = std::max(d, rel_dev(s2.retraction * psi * s1.inclusion, phi));

    return {d, d <= 1e-10};
}

}  // namespace edgelab
