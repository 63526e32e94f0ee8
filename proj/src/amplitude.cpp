#include "qse/amplitude.hpp"

#include <cmath>
#include <sstream>

#include "qse/errors.hpp"

namespace qse {

namespace {

using complexd = std::complex<double>;
constexpr complexd kI{0.0, 1.0};
constexpr double kOmega0 = 1.0;

// Closed-form antiderivatives of the kernel f(u) = C (a + iu)^-(s+1) and of
// u*f(u), with C = eta * omega_c^(1-s) * Gamma(s+1) and a = 1/omega_c. These
// give exact segment moments of the memory kernel, so the convolution error
// comes only from the piecewise-linear history, never from kernel steepness.
struct KernelMoments {
    double s;
    double a;
    double C;

    explicit KernelMoments(const OhmicSpectralDensity& env)
        : s(env.s),
          a(1.0 / env.omega_c),
          C(env.eta * std::pow(env.omega_c, 1.0 - env.s) * std::tgamma(env.s + 1.0)) {}

    complexd F0(double u) const {
        return C * (kI / s) * std::pow(complexd(a, u), -s);
    }

    complexd F1(double u) const {
        const complexd w(a, u);
        if (s == 1.0) return C * (-std::log(w) - a / w);
        return C * (-std::pow(w, 1.0 - s) / (1.0 - s) - (a / s) * std::pow(w, -s));
    }
};

struct Pass {
    std::vector<complexd> values;
    std::vector<complexd> derivatives;
};

Pass run_pass(const OhmicSpectralDensity& env, std::size_t steps, double dt) {
    const KernelMoments mom(env);

    // Segment weights: the convolution at step n+1 reads
    //   sum_{m=1..n+1} [ c_{n+1-m} P_m + c_{n+2-m} Q_m ]
    // with P, Q the linear-interpolation moments over [(m-1)dt, m*dt].
    // Folding P_m + Q_{m+1} into R_m leaves one inner product per step plus
    // the implicit endpoint weight Q_1.
    std::vector<complexd> P(steps + 2), Q(steps + 2), R(steps + 1);
    if (env.eta > 0.0) {
        complexd f0_lo = mom.F0(0.0), f1_lo = mom.F1(0.0);
        for (std::size_t m = 1; m <= steps + 1; ++m) {
            const double u0 = static_cast<double>(m - 1) * dt;
            const double u1 = static_cast<double>(m) * dt;
            const complexd f0_hi = mom.F0(u1), f1_hi = mom.F1(u1);
            const complexd m0 = f0_hi - f0_lo;
            const complexd m1 = f1_hi - f1_lo;
            P[m] = (m1 - u0 * m0) / dt;
            Q[m] = (u1 * m0 - m1) / dt;
            f0_lo = f0_hi;
            f1_lo = f1_hi;
        }
        for (std::size_t m = 1; m <= steps; ++m) R[m] = P[m] + Q[m + 1];
    }

    Pass out;
    out.values.resize(steps + 1);
    out.derivatives.resize(steps + 1);
    out.values[0] = complexd(1.0, 0.0);
    out.derivatives[0] = -kI * kOmega0;

    const complexd q1 = Q[1];
    const complexd denom = 1.0 + 0.5 * dt * (kI * kOmega0 + q1);

    for (std::size_t n = 0; n < steps; ++n) {
        // Known part of the memory integral at t_{n+1}.
        complexd known = out.values[0] * P[n + 1];
        const complexd* c = out.values.data();
        const complexd* r = R.data();
        for (std::size_t j = 1; j <= n; ++j) known += c[j] * r[n + 1 - j];

        const complexd next =
            (out.values[n] + 0.5 * dt * (out.derivatives[n] - known)) / denom;
        if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) {
            std::ostringstream msg;
            msg << "solve_volterra: non-finite amplitude at step " << n + 1
                << " (t=" << (n + 1) * dt << ")";
            throw NumericalError(msg.str());
        }
        out.values[n + 1] = next;
        out.derivatives[n + 1] = -kI * kOmega0 * next - known - q1 * next;
    }
    return out;
}

} // namespace

AmplitudeTrajectory solve_volterra(const OhmicSpectralDensity& env, double t_max,
                                   double dt) {
    if (!(dt > 0.0) || !(t_max >= dt)) {
        throw DomainError("solve_volterra: require dt > 0 and t_max >= dt");
    }

    const auto steps = static_cast<std::size_t>(std::llround(t_max / dt));
    const Pass coarse = run_pass(env, steps, dt);
    const Pass fine = run_pass(env, 2 * steps, 0.5 * dt);

    AmplitudeTrajectory traj;
    traj.dt = dt;
    traj.env = env;
    traj.times.resize(steps + 1);
    traj.values.resize(steps + 1);
    traj.derivatives.resize(steps + 1);

    double max_diff = 0.0;
    for (std::size_t k = 0; k <= steps; ++k) {
        traj.times[k] = static_cast<double>(k) * dt;
        const complexd cf = coarse.values[k];
        const complexd ch = fine.values[2 * k];
        max_diff = std::max(max_diff, std::abs(ch - cf));
        traj.values[k] = ch + (ch - cf) / 3.0;
        const complexd df = coarse.derivatives[k];
        const complexd dh = fine.derivatives[2 * k];
        traj.derivatives[k] = dh + (dh - df) / 3.0;
    }
    traj.claimed_tolerance = max_diff / 3.0;
    return traj;
}

std::complex<double> markov_amplitude(const OhmicSpectralDensity& env, double t) {
    if (t < 0.0) throw DomainError("markov_amplitude: t must be >= 0");
    const MarkovRates mr = markov_rates(env);
    return std::exp(-(mr.kappa + kI * (kOmega0 + mr.delta)) * t);
}

std::complex<double> asymptotic_amplitude(const std::optional<BoundState>& bound,
                                          double t) {
    if (t < 0.0) throw DomainError("asymptotic_amplitude: t must be >= 0");
    if (!bound) return {0.0, 0.0};
    return bound->residue * std::exp(-kI * bound->energy * t);
}

std::complex<double> asymptotic_amplitude(const OhmicSpectralDensity& env, double t) {
    return asymptotic_amplitude(find_bound_state(env), t);
}

std::vector<RateSample> rates_from_amplitude(const AmplitudeTrajectory& traj) {
    const std::size_t n = traj.size();
    std::vector<RateSample> rates(n);
    if (n < 3) throw DomainError("rates_from_amplitude: need at least 3 samples");

    const double dt = traj.dt;
    for (std::size_t k = 0; k < n; ++k) {
        const complexd c = traj.values[k];
        RateSample& r = rates[k];
        r.t = traj.times[k];
        if (std::abs(c) <= 1e-10) {
            r = {traj.times[k], 0.0, 0.0, false};
            continue;
        }
        complexd dc;
        if (k == 0) {
            dc = (-3.0 * traj.values[0] + 4.0 * traj.values[1] - traj.values[2]) /
                 (2.0 * dt);
        } else if (k == n - 1) {
            dc = (3.0 * traj.values[n - 1] - 4.0 * traj.values[n - 2] +
                  traj.values[n - 3]) /
                 (2.0 * dt);
        } else {
            dc = (traj.values[k + 1] - traj.values[k - 1]) / (2.0 * dt);
        }
        const complexd logderiv = dc / c;
        r.omega = -logderiv.imag();
        r.gamma = -logderiv.real();
        r.available = true;
    }
    return rates;
}

} // namespace qse
