#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace qse {

// Ohmic-family spectral density J(w) = eta * w^s * omega_c^(1-s) * exp(-w/omega_c).
// The qubit transition frequency omega0 = 1 fixes the unit system: all
// frequencies are in units of omega0, all times in 1/omega0.
struct OhmicSpectralDensity {
    double eta;      // dimensionless coupling, >= 0
    double s;        // Ohmicity exponent, > 0 (sub-Ohmic < 1 < super-Ohmic)
    double omega_c;  // cutoff frequency, > 0
};

// Discrete eigenstate of one qubit plus its environment below the band.
// residue is the weight Z of the bound-state pole in the amplitude.
struct BoundState {
    double energy;   // E_b < 0
    double residue;  // Z in (0, 1]
};

struct MarkovRates {
    double kappa;  // decay rate pi*J(1)
    double delta;  // Lamb shift, principal-value integral of J(w)/(1-w)
};

struct SpectrumPoint {
    double eta;
    std::optional<BoundState> bound;
};

// J(w); throws DomainError for negative frequency or bad parameters.
double j_omega(const OhmicSpectralDensity& env, double omega);

// Environment correlation function f(t) = Int_0^inf J(w) e^{-iwt} dw via the
// closed form eta * omega_c^(1-s) * Gamma(s+1) * (1/omega_c + it)^-(s+1).
std::complex<double> kernel_f(const OhmicSpectralDensity& env, double t);

// Coupling threshold eta_c = 1 / (omega_c * Gamma(s)) above which the
// qubit-environment spectrum develops a bound state below the band.
double eta_critical(double s, double omega_c);

// Self energy Y(E) = 1 - Int_0^inf J(w)/(w - E) dw for E < 0; strictly
// decreasing on (-inf, 0).
double self_energy_Y(const OhmicSpectralDensity& env, double E,
                     double quad_tol = 1e-13);

// Locates the bound state E_b < 0 solving Y(E) = E by bisection, then the
// residue Z = [1 + Int J(w)/(E_b - w)^2 dw]^-1. Returns nullopt when
// eta <= eta_c (no pole below the band).
std::optional<BoundState> find_bound_state(const OhmicSpectralDensity& env,
                                           double quad_tol = 1e-10);

// kappa = pi*J(1) exactly; delta by principal-value quadrature with the
// symmetric window around w = 1 folded analytically.
MarkovRates markov_rates(const OhmicSpectralDensity& env);

// Bound-state branch over a coupling grid at fixed (s, omega_c). The band
// is the fixed interval [0, inf) for every eta and is not tabulated.
std::vector<SpectrumPoint> spectrum_scan(double s, double omega_c,
                                         std::span<const double> eta_grid);

} // namespace qse
