#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>

namespace edgelab {

/// 0 -> J -> A -> O -> 0 with a splitting A = J (+) O, in coordinates.
///
/// A carries its own basis; `inclusion`/`section` embed J and O, `retraction`/`quotient`
/// are the matching left inverses.
struct SplitSequence {
    int dim_J = 0;
    int dim_O = 0;
    Eigen::MatrixXd gram_J;
    Eigen::MatrixXd gram_O;
    Eigen::MatrixXd gram_A;
    Eigen::MatrixXd inclusion;   ///< dim_A x dim_J
    Eigen::MatrixXd retraction;  ///< dim_J x dim_A
    Eigen::MatrixXd quotient;    ///< dim_O x dim_A
    Eigen::MatrixXd section;     ///< dim_A x dim_O

    [[nodiscard]] int dim_A() const { return dim_J + dim_O; }
};

/// Random instance, deterministic in `seed`.  Passing `gram_O` shares the quotient between
/// two sequences, which is what comparing them requires.
[[nodiscard]] SplitSequence build_random_split(int dim_J, int dim_O, std::uint64_t seed,
                                               const std::optional<Eigen::MatrixXd>& gram_O = {});

/// Largest violation of the splitting identities and block orthogonality.
[[nodiscard]] double split_invariant_deviation(const SplitSequence& s);

/// A map J1 -> J2 carrying gram_J1 onto gram_J2.
[[nodiscard]] Eigen::MatrixXd random_isometry(const SplitSequence& s1, const SplitSequence& s2,
                                              std::uint64_t seed);

/// psi = inclusion2 phi retraction1 + section2 quotient1, i.e. psi(j, o) = (phi j, o).
[[nodiscard]] Eigen::MatrixXd lift_isometry(const SplitSequence& s1, const SplitSequence& s2,
                                            const Eigen::MatrixXd& phi);

struct SplitCheck {
    double max_deviation = 0.0;
    bool pass = false;
};

/// Throws InvalidArgument on dimension mismatch, differing quotients, or a phi that is not
/// an isometry to 1e-12.
[[nodiscard]] SplitCheck verify_split_isometry(const SplitSequence& s1, const SplitSequence& s2,
                                               const Eigen::MatrixXd& phi);

}  // namespace edgelab
