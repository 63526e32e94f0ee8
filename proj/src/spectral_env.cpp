#include "qse/spectral_env.hpp"

#include <cmath>
#include <sstream>

#include "qse/errors.hpp"
#include "qse/quadrature.hpp"

namespace qse {

namespace {

void check_env(const OhmicSpectralDensity& env) {
    if (!(env.eta >= 0.0) || !(env.s > 0.0) || !(env.omega_c > 0.0)) {
        std::ostringstream msg;
        msg << "invalid spectral density parameters: eta=" << env.eta
            << " s=" << env.s << " omega_c=" << env.omega_c;
        throw DomainError(msg.str());
    }
}

// Upper truncation for integrals against x^s e^{-x}; the discarded tail is
// below 1e-25 for the admissible s range.
double tail_cutoff(double s) { return 70.0 + 15.0 * std::max(0.0, s - 1.0); }

// Int_0^inf x^s e^{-x} / (x + b)^pow dx, b > 0, pow in {1, 2}.
double laplace_moment(double s, double b, int pow, double quad_tol) {
    const double cut = tail_cutoff(s);
    auto integrand = [s, b, pow](double x) {
        const double base = std::pow(x, s) * std::exp(-x);
        double den = x + b;
        if (pow == 2) den *= x + b;
        return base / den;
    };
    quad::Options opt;
    opt.abs_tol = quad_tol;
    opt.rel_tol = quad_tol;
    // Split at the scale of the 1/(x+b) feature so the sharp region near the
    // origin is refined independently of the smooth bulk.
    const double split = std::min(std::max(b, 1e-8), 1.0);
    return quad::integrate(integrand, 0.0, split, opt) +
           quad::integrate(integrand, split, 1.0, opt) +
           quad::integrate(integrand, 1.0, cut, opt);
}

} // namespace

double j_omega(const OhmicSpectralDensity& env, double omega) {
    check_env(env);
    if (omega < 0.0) {
        throw DomainError("j_omega: negative frequency " + std::to_string(omega));
    }
    if (omega == 0.0) return 0.0;
    return env.eta * std::pow(omega, env.s) * std::pow(env.omega_c, 1.0 - env.s) *
           std::exp(-omega / env.omega_c);
}

std::complex<double> kernel_f(const OhmicSpectralDensity& env, double t) {
    check_env(env);
    const std::complex<double> base(1.0 / env.omega_c, t);
    return env.eta * std::pow(env.omega_c, 1.0 - env.s) * std::tgamma(env.s + 1.0) *
           std::pow(base, -(env.s + 1.0));
}

double eta_critical(double s, double omega_c) {
    if (!(s > 0.0) || !(omega_c > 0.0)) {
        throw DomainError("eta_critical: require s > 0 and omega_c > 0");
    }
    return 1.0 / (omega_c * std::tgamma(s));
}

double self_energy_Y(const OhmicSpectralDensity& env, double E, double quad_tol) {
    check_env(env);
    if (E >= 0.0) {
        throw DomainError("self_energy_Y: E must lie below the band (E < 0), got " +
                          std::to_string(E));
    }
    // Substitution w = omega_c * x turns the level-shift integral into
    // eta * omega_c * Int x^s e^{-x} / (x + b) dx with b = -E / omega_c.
    const double b = -E / env.omega_c;
    return 1.0 - env.eta * env.omega_c * laplace_moment(env.s, b, 1, quad_tol);
}

std::optional<BoundState> find_bound_state(const OhmicSpectralDensity& env,
                                           double quad_tol) {
    check_env(env);
    // Y(0) = 1 - eta * omega_c * Gamma(s) in closed form; the bound state
    // exists iff Y(0) < 0. A small guard keeps the threshold eta = eta_c
    // itself on the "no bound state" side despite rounding.
    const double y0 = 1.0 - env.eta * env.omega_c * std::tgamma(env.s);
    if (y0 >= -1e-12) return std::nullopt;

    auto g = [&](double E) { return self_energy_Y(env, E, quad_tol) - E; };

    double lo = y0 - 1.0;  // g(lo) >= 1 since Y >= Y(0) on E < 0
    double hi = -1e-13;    // g(hi) ~ Y(0) < 0
    double g_lo = g(lo);
    double g_hi = g(hi);
    if (g_lo <= 0.0 || g_hi >= 0.0) {
        std::ostringstream msg;
        msg << "find_bound_state: bracket failure, g(" << lo << ")=" << g_lo
            << " g(" << hi << ")=" << g_hi;
        throw NumericalError(msg.str());
    }

    double mid = 0.5 * (lo + hi);
    double g_mid = g(mid);
    for (int iter = 0; iter < 300 && std::abs(g_mid) > 1e-13; ++iter) {
        if (g_mid > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        mid = 0.5 * (lo + hi);
        g_mid = g(mid);
    }
    if (std::abs(g_mid) > 1e-12) {
        std::ostringstream msg;
        msg << "find_bound_state: residual |Y(E)-E|=" << std::abs(g_mid)
            << " did not reach 1e-12 at E=" << mid;
        throw NumericalError(msg.str());
    }

    const double b = -mid / env.omega_c;
    const double z = 1.0 / (1.0 + env.eta * laplace_moment(env.s, b, 2, quad_tol));
    return BoundState{mid, z};
}

MarkovRates markov_rates(const OhmicSpectralDensity& env) {
    check_env(env);
    const double kappa = M_PI * j_omega(env, 1.0);
    if (env.eta == 0.0) return {0.0, 0.0};

    // P Int_0^inf J(w)/(1-w) dw: fold the symmetric window around w = 1 so
    // the singularity cancels, Int_0^2 -> Int_0^1 [J(1-u) - J(1+u)]/u du,
    // then add the regular tail over [2, inf).
    quad::Options opt;
    opt.abs_tol = 1e-12;
    opt.rel_tol = 1e-12;
    auto folded = [&env](double u) {
        return (j_omega(env, 1.0 - u) - j_omega(env, 1.0 + u)) / u;
    };
    const double window = quad::integrate(folded, 0.0, 1.0, opt);
    const double cut = env.omega_c * tail_cutoff(env.s);
    auto tail = [&env](double w) { return j_omega(env, w) / (1.0 - w); };
    const double rest = quad::integrate(tail, 2.0, cut, opt);
    return {kappa, window + rest};
}

std::vector<SpectrumPoint> spectrum_scan(double s, double omega_c,
                                         std::span<const double> eta_grid) {
    std::vector<SpectrumPoint> table;
    table.reserve(eta_grid.size());
    for (double eta : eta_grid) {
        if (eta < 0.0) throw DomainError("spectrum_scan: negative eta in grid");
        table.push_back({eta, find_bound_state({eta, s, omega_c})});
    }
    return table;
}

} // namespace qse
