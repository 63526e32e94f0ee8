#pragma once

#include <complex>
#include <vector>

#include "qse/amplitude.hpp"
#include "qse/steering_ellipsoid.hpp"
#include "qse/two_qubit_state.hpp"

namespace qse {

// Time series of the reduced two-qubit state generated from the initial
// family by the local dissipative channels.
struct EvolvedStateSeries {
    std::vector<double> times;
    std::vector<TwoQubitDensity> states;
    double p = 0.0;
    double theta = 0.0;
    AmplitudeTrajectory trajA;
    AmplitudeTrajectory trajB;
    // True when the series covers the full requested grid; the oracle
    // integrator truncates when a time-local rate becomes unavailable.
    bool complete = true;
    // Largest anti-Hermitian drift removed by the oracle's per-step
    // re-symmetrization (0 for the closed-form route).
    double hermiticity_drift = 0.0;
};

// Closed-form reduced density matrix given the two amplitude values. The
// only nonzero elements are the diagonal and the (gg, ee) corner; everything
// follows from (p, theta, c_A, c_B).
TwoQubitDensity rho_of_t(double p, double theta, std::complex<double> cA,
                         std::complex<double> cB);

// Pointwise application of rho_of_t along two matching trajectories.
EvolvedStateSeries evolve_series(double p, double theta,
                                 const AmplitudeTrajectory& trajA,
                                 const AmplitudeTrajectory& trajB);

// Independent check of the closed form: integrates the time-local master
// equation with rates Omega_j, Gamma_j derived from the trajectories
// (classical fourth-order stepping on the amplitude grid, states
// re-symmetrized each step). Truncates if |c_j| falls below 1e-10.
EvolvedStateSeries integrate_master_equation(double p, double theta,
                                             const AmplitudeTrajectory& trajA,
                                             const AmplitudeTrajectory& trajB);

// Steady-state steering ellipsoid from the closed-form center and semiaxis
// expressions evaluated at |c_A| = zA, |c_B| = zB; axes are coordinate
// aligned (the family's correlation matrix is diagonal up to a z rotation
// and the lengths depend only on the moduli).
SteeringEllipsoid steady_state_qse(Party party, double p, double theta, double zA,
                                   double zB);

} // namespace qse
