#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <tuple>
#include <vector>

#include "qse/amplitude.hpp"
#include "qse/quadrature.hpp"
#include "qse/spectral_env.hpp"
#include "qse/two_qubit_state.hpp"

namespace testing {

inline double uniform01(std::mt19937& rng) {
    const std::uint64_t hi = rng(), lo = rng();
    return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
}

inline double gaussian(std::mt19937& rng) {
    // Box-Muller on explicit uniforms keeps the stream reproducible.
    const double u1 = std::max(uniform01(rng), 1e-300);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline std::complex<double> cgaussian(std::mt19937& rng) {
    const double re = gaussian(rng);
    const double im = gaussian(rng);
    return {re, im};
}

// Ginibre-induced random density matrix.
inline qse::TwoQubitDensity random_density(std::mt19937& rng) {
    Eigen::Matrix4cd g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = cgaussian(rng);
    Eigen::Matrix4cd rho = g * g.adjoint();
    rho /= rho.trace().real();
    return {rho};
}

inline Eigen::Matrix2cd random_qubit_density(std::mt19937& rng) {
    Eigen::Matrix2cd g;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(i, j) = cgaussian(rng);
    Eigen::Matrix2cd rho = g * g.adjoint();
    rho /= rho.trace().real();
    return rho;
}

inline Eigen::Matrix2cd random_unitary2(std::mt19937& rng) {
    Eigen::Matrix2cd g;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(i, j) = cgaussian(rng);
    Eigen::HouseholderQR<Eigen::Matrix2cd> qr(g);
    Eigen::Matrix2cd q = qr.householderQ();
    Eigen::Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < 2; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
    return q;
}

// Closed-form concurrence for X-shaped states (diagonal plus anti-diagonal),
// used as an independent oracle for the eigenvalue route.
inline double x_state_concurrence(const qse::TwoQubitDensity& rho) {
    const double r11 = rho.m(0, 0).real(), r22 = rho.m(1, 1).real();
    const double r33 = rho.m(2, 2).real(), r44 = rho.m(3, 3).real();
    const double corner = std::abs(rho.m(3, 0));
    const double inner = std::abs(rho.m(1, 2));
    const double c1 = corner - std::sqrt(std::max(0.0, r22 * r33));
    const double c2 = inner - std::sqrt(std::max(0.0, r11 * r44));
    return 2.0 * std::max({0.0, c1, c2});
}

// Direct quadrature of the defining kernel integral, independent of the
// closed form used in production.
inline std::complex<double> kernel_by_quadrature(const qse::OhmicSpectralDensity& env,
                                                 double t, double tol = 1e-11) {
    qse::quad::Options opt;
    opt.abs_tol = tol;
    opt.rel_tol = tol;
    opt.max_intervals = 400000;
    const double cut = env.omega_c * (70.0 + 15.0 * std::max(0.0, env.s - 1.0));
    auto f = [&env, t](double w) {
        return qse::j_omega(env, w) *
               std::exp(std::complex<double>(0.0, -w * t));
    };
    return qse::quad::integrate(f, 0.0, cut, opt);
}

// Expensive trajectories shared between test cases (single-threaded runner).
inline const qse::AmplitudeTrajectory& cached_solve(double eta, double s,
                                                    double omega_c, double t_max,
                                                    double dt) {
    using Key = std::tuple<double, double, double, double, double>;
    static std::map<Key, qse::AmplitudeTrajectory> cache;
    const Key key{eta, s, omega_c, t_max, dt};
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, qse::solve_volterra({eta, s, omega_c}, t_max, dt))
                 .first;
    }
    return it->second;
}

// Dominant frequency (cycles per time unit) of a demeaned, Hann-windowed
// series by dense scan plus golden refinement.
inline double dominant_frequency(const std::vector<double>& times,
                                 const std::vector<double>& values, double f_lo,
                                 double f_hi) {
    const std::size_t n = times.size();
    std::vector<double> w(n);
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    const double span = times.back() - times.front();
    for (std::size_t k = 0; k < n; ++k) {
        const double x = (times[k] - times.front()) / span;
        w[k] = (values[k] - mean) * 0.5 * (1.0 - std::cos(2.0 * M_PI * x));
    }

    auto power = [&](double f) {
        std::complex<double> acc{};
        for (std::size_t k = 0; k < n; ++k) {
            acc += w[k] * std::exp(std::complex<double>(0.0, -2.0 * M_PI * f *
                                                                 times[k]));
        }
        return std::norm(acc);
    };

    const int coarse = 400;
    double best_f = f_lo, best_p = -1.0;
    for (int i = 0; i <= coarse; ++i) {
        const double f = f_lo + (f_hi - f_lo) * i / coarse;
        const double p = power(f);
        if (p > best_p) {
            best_p = p;
            best_f = f;
        }
    }
    double lo = best_f - (f_hi - f_lo) / coarse;
    double hi = best_f + (f_hi - f_lo) / coarse;
    const double gold = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gold * (hi - lo), x2 = lo + gold * (hi - lo);
    double p1 = power(x1), p2 = power(x2);
    for (int it = 0; it < 80; ++it) {
        if (p1 < p2) {
            lo = x1;
            x1 = x2;
            p1 = p2;
            x2 = lo + gold * (hi - lo);
            p2 = power(x2);
        } else {
            hi = x2;
            x2 = x1;
            p2 = p1;
            x1 = hi - gold * (hi - lo);
            p1 = power(x1);
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace testing
