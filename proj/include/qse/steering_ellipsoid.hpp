#pragma once

#include <Eigen/Dense>

#include "qse/two_qubit_state.hpp"

namespace qse {

enum class Party { alice, bob };

// Measurement direction: who measures, steering the other party's state.
enum class Direction { a_to_b, b_to_a };

// Quantum steering ellipsoid of one party in Bloch coordinates. semiaxes are
// sorted descending; axes columns are the matching orthonormal directions.
// degenerate is set when the steering party's marginal is pure (all steered
// states coincide) and the ellipsoid is reported as a point at the steered
// party's marginal.
struct SteeringEllipsoid {
    Eigen::Vector3d center;
    Eigen::Vector3d semiaxes;
    Eigen::Matrix3d axes;
    bool degenerate = false;
};

// Bob's ellipsoid: all Bloch vectors Bob can be steered to by POVMs on
// Alice's qubit. Center (b - T^t a)/(1-|a|^2), squared semiaxes from the
// ellipsoid matrix Q_B.
SteeringEllipsoid ellipsoid_of_B(const PauliForm& pf);

// Alice's ellipsoid under measurements on Bob's side (mirror image).
SteeringEllipsoid ellipsoid_of_A(const PauliForm& pf);

// Steered Bloch vector (b + T^t e)/(1 + a.e) for a_to_b, mirrored for
// b_to_a. Throws DomainError when |e| > 1 and NumericalError when the
// measurement is singular (1 + a.e <= 1e-12).
Eigen::Vector3d steered_bloch(const PauliForm& pf, const Eigen::Vector3d& e,
                              Direction dir);

struct SeparabilityResult {
    bool separable;
    double min_pt_eigenvalue;
};

// Peres-Horodecki test, exact for two qubits: separable iff the partial
// transpose stays positive semidefinite.
SeparabilityResult is_separable(const TwoQubitDensity& rho);

Eigen::Matrix4cd partial_transpose_B(const Eigen::Matrix4cd& m);

// Reorients eigenvector columns for continuity with a reference frame:
// within near-degenerate eigenvalue groups the basis is rotated toward the
// reference, and column signs follow it. Used when exporting ellipsoid
// series so degenerate transverse axes do not jump between samples.
Eigen::Matrix3d align_axes(const Eigen::Matrix3d& axes,
                           const Eigen::Vector3d& semiaxes,
                           const Eigen::Matrix3d& reference);

} // namespace qse
