#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "qse/spectral_env.hpp"

namespace qse {

// Solution samples of the amplitude equation
//   c'(t) + i*c(t) + Int_0^t f(t-tau) c(tau) dtau = 0,  c(0) = 1,
// on a uniform grid. derivatives holds c'(t) evaluated through the equation
// itself (not by finite differences), claimed_tolerance is the Richardson
// error estimate from the internal step-halving pass.
struct AmplitudeTrajectory {
    double dt = 0.0;
    std::vector<double> times;
    std::vector<std::complex<double>> values;
    std::vector<std::complex<double>> derivatives;
    OhmicSpectralDensity env{0.0, 1.0, 1.0};
    double claimed_tolerance = 0.0;

    std::size_t size() const { return times.size(); }
    double t_max() const { return times.empty() ? 0.0 : times.back(); }
};

// Product-trapezoidal Volterra scheme: the memory integral uses exact
// closed-form moments of the kernel against a piecewise-linear history, the
// implicit endpoint is solved in closed form, and the trajectory is
// Richardson-extrapolated from runs at dt and dt/2.
AmplitudeTrajectory solve_volterra(const OhmicSpectralDensity& env, double t_max,
                                   double dt);

// Born-Markov closed form c(t) = exp(-[kappa + i(1 + delta)] t).
std::complex<double> markov_amplitude(const OhmicSpectralDensity& env, double t);

// Long-time limit: 0 without a bound state, Z exp(-i E_b t) with one.
std::complex<double> asymptotic_amplitude(const OhmicSpectralDensity& env, double t);
std::complex<double> asymptotic_amplitude(const std::optional<BoundState>& bound,
                                          double t);

// Time-local master-equation coefficients Omega = -Im[c'/c], Gamma = -Re[c'/c]
// recovered from a trajectory by central differences (one-sided at the ends).
// Samples where |c| falls below 1e-10 are marked unavailable.
struct RateSample {
    double t;
    double omega;
    double gamma;
    bool available;
};

std::vector<RateSample> rates_from_amplitude(const AmplitudeTrajectory& traj);

} // namespace qse
