#include "qse/dissipative_map.hpp"

#include <cmath>
#include <sstream>

#include "qse/errors.hpp"

namespace qse {

namespace {

using complexd = std::complex<double>;

void check_modulus(const char* name, complexd c) {
    if (std::abs(c) > 1.0 + 1e-9) {
        std::ostringstream msg;
        msg << "rho_of_t: |" << name << "| = " << std::abs(c)
            << " exceeds 1 (amplitudes are contractive)";
        throw DomainError(msg.str());
    }
}

void check_grids(const AmplitudeTrajectory& a, const AmplitudeTrajectory& b) {
    if (a.size() != b.size() || std::abs(a.dt - b.dt) > 1e-15) {
        throw DomainError("amplitude trajectories must share one time grid");
    }
}

// Local amplitude-damping generator with time-local rates; n_j = |e><e| on
// qubit j, jump |g><e|. Diagonal phase/decay factors plus the two refill
// terms, exploiting the fixed product basis (|gg>, |ge>, |eg>, |ee>).
Eigen::Matrix4cd apply_generator(const Eigen::Matrix4cd& rho, double omegaA,
                                 double gammaA, double omegaB, double gammaB) {
    static const double nA[4] = {0, 0, 1, 1};
    static const double nB[4] = {0, 1, 0, 1};
    Eigen::Matrix4cd out;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const complexd phase(-gammaA * (nA[i] + nA[j]) - gammaB * (nB[i] + nB[j]),
                                 -omegaA * (nA[i] - nA[j]) - omegaB * (nB[i] - nB[j]));
            out(i, j) = phase * rho(i, j);
        }
    }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out(i, j) += 2.0 * gammaA * rho(i + 2, j + 2);
    for (int i = 0; i < 4; i += 2)
        for (int j = 0; j < 4; j += 2) out(i, j) += 2.0 * gammaB * rho(i + 1, j + 1);
    return out;
}

struct RatePair {
    double omega;
    double gamma;
};

bool rate_at(const AmplitudeTrajectory& traj, std::size_t k, RatePair& out) {
    const complexd c = traj.values[k];
    if (std::abs(c) <= 1e-10) return false;
    const complexd logderiv = traj.derivatives[k] / c;
    out = {-logderiv.imag(), -logderiv.real()};
    return true;
}

// Half-step rate from a centered 4-point stencil (falls back to averaging at
// the ends); the early-time rates ride the kernel's memory layer, where
// linear interpolation alone would cap the oracle's accuracy.
RatePair rate_midpoint(const std::vector<RatePair>& rates, std::size_t k) {
    const std::size_t n = rates.size();
    if (k == 0 || k + 2 >= n) {
        return {0.5 * (rates[k].omega + rates[k + 1].omega),
                0.5 * (rates[k].gamma + rates[k + 1].gamma)};
    }
    auto mid = [](double a, double b, double c, double d) {
        return (-a + 9.0 * b + 9.0 * c - d) / 16.0;
    };
    return {mid(rates[k - 1].omega, rates[k].omega, rates[k + 1].omega,
                rates[k + 2].omega),
            mid(rates[k - 1].gamma, rates[k].gamma, rates[k + 1].gamma,
                rates[k + 2].gamma)};
}

} // namespace

TwoQubitDensity rho_of_t(double p, double theta, complexd cA, complexd cB) {
    if (!(p >= 0.0 && p <= 1.0) || !(theta >= 0.0 && theta <= M_PI / 2.0)) {
        throw DomainError("rho_of_t: (p, theta) outside the initial family domain");
    }
    check_modulus("c_A", cA);
    check_modulus("c_B", cB);

    const double u = std::norm(cA);
    const double v = std::norm(cB);
    const double s2 = std::sin(theta) * std::sin(theta);
    const double cos2t = std::cos(2.0 * theta);

    const double d = 0.5 * v * (-1.0 + p * cos2t + (1.0 + p) * u * s2);

    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = 1.0 - u * s2 + d;
    m(1, 1) = -d;
    m(2, 2) = -0.5 * u * (-2.0 + (1.0 + p) * v) * s2;
    m(3, 3) = 0.5 * u * v * (1.0 + p) * s2;
    // The excited-excited component carries the amplitude product, so the
    // corner consistent with the Schroedinger phase of |ee> is <ee|rho|gg>.
    m(3, 0) = cA * cB * p * std::cos(theta) * std::sin(theta);
    m(0, 3) = std::conj(m(3, 0));
    return {m};
}

EvolvedStateSeries evolve_series(double p, double theta,
                                 const AmplitudeTrajectory& trajA,
                                 const AmplitudeTrajectory& trajB) {
    check_grids(trajA, trajB);
    EvolvedStateSeries series;
    series.p = p;
    series.theta = theta;
    series.times = trajA.times;
    series.trajA = trajA;
    series.trajB = trajB;
    series.states.reserve(trajA.size());
    for (std::size_t k = 0; k < trajA.size(); ++k) {
        series.states.push_back(rho_of_t(p, theta, trajA.values[k], trajB.values[k]));
    }
    return series;
}

EvolvedStateSeries integrate_master_equation(double p, double theta,
                                             const AmplitudeTrajectory& trajA,
                                             const AmplitudeTrajectory& trajB) {
    check_grids(trajA, trajB);
    const double dt = trajA.dt;
    const std::size_t n = trajA.size();

    EvolvedStateSeries series;
    series.p = p;
    series.theta = theta;
    series.trajA = trajA;
    series.trajB = trajB;
    series.times.reserve(n);
    series.states.reserve(n);

    Eigen::Matrix4cd rho = from_initial_family({p, theta}).m;
    series.times.push_back(trajA.times[0]);
    series.states.push_back({rho});

    std::vector<RatePair> ratesA, ratesB;
    ratesA.reserve(n);
    ratesB.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        RatePair ra{}, rb{};
        if (!rate_at(trajA, k, ra) || !rate_at(trajB, k, rb)) break;
        ratesA.push_back(ra);
        ratesB.push_back(rb);
    }
    const std::size_t valid = ratesA.size();

    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (k + 1 >= valid) {
            series.complete = false;  // halted; last valid time already stored
            return series;
        }
        const RatePair a0 = ratesA[k], a1 = ratesA[k + 1];
        const RatePair b0 = ratesB[k], b1 = ratesB[k + 1];
        const RatePair am = rate_midpoint(ratesA, k);
        const RatePair bm = rate_midpoint(ratesB, k);

        const Eigen::Matrix4cd k1 =
            apply_generator(rho, a0.omega, a0.gamma, b0.omega, b0.gamma);
        const Eigen::Matrix4cd k2 = apply_generator(rho + 0.5 * dt * k1, am.omega,
                                                    am.gamma, bm.omega, bm.gamma);
        const Eigen::Matrix4cd k3 = apply_generator(rho + 0.5 * dt * k2, am.omega,
                                                    am.gamma, bm.omega, bm.gamma);
        const Eigen::Matrix4cd k4 = apply_generator(rho + dt * k3, a1.omega, a1.gamma,
                                                    b1.omega, b1.gamma);
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        series.hermiticity_drift =
            std::max(series.hermiticity_drift,
                     0.5 * (rho - rho.adjoint().eval()).cwiseAbs().maxCoeff());
        rho = 0.5 * (rho + rho.adjoint().eval());

        series.times.push_back(trajA.times[k + 1]);
        series.states.push_back({rho});
    }
    return series;
}

SteeringEllipsoid steady_state_qse(Party party, double p, double theta, double zA,
                                   double zB) {
    if (!(p >= 0.0 && p <= 1.0) || !(theta >= 0.0 && theta <= M_PI / 2.0) ||
        !(zA >= 0.0 && zA <= 1.0) || !(zB >= 0.0 && zB <= 1.0)) {
        throw DomainError("steady_state_qse: parameters outside domain");
    }

    const double u = zA * zA;
    const double v = zB * zB;
    const double sin_t = std::sin(theta), cos_t = std::cos(theta);
    const double s2 = sin_t * sin_t, c2 = cos_t * cos_t;
    const double r = p * std::cos(2.0 * theta) - 1.0;

    SteeringEllipsoid e;
    e.axes.setIdentity();
    e.degenerate = false;

    double lx = 0.0, lz = 0.0, cz = 0.0;
    if (party == Party::alice) {
        if (std::abs(r) < 1e-15) {
            // p = 1, theta = 0: the family collapses to |gg><gg|.
            return SteeringEllipsoid{{0, 0, 1}, {0, 0, 0},
                                     Eigen::Matrix3d::Identity(), true};
        }
        const double stretch = 2.0 + r * v;
        cz = 1.0 + 2.0 * u * s2 * ((1.0 + p) * (1.0 + r * v) - r) / (r * stretch);
        lx = p * zA * std::abs(std::sin(2.0 * theta)) / std::sqrt(-r * stretch);
        lz = 4.0 * p * u * c2 * s2 / (std::abs(r) * stretch);
    } else {
        const double depletion = 1.0 - u * s2;
        if (depletion < 1e-15) {
            // zA = 1, theta = pi/2: pure |ee> end point.
            return SteeringEllipsoid{{0, 0, 1.0 - (1.0 + p) * v}, {0, 0, 0},
                                     Eigen::Matrix3d::Identity(), true};
        }
        cz = 1.0 - v * (1.0 + p) + p * v * c2 / depletion;
        lx = p * zB * std::abs(cos_t) / std::sqrt(depletion);
        lz = p * v * c2 / depletion;
    }

    e.center = Eigen::Vector3d(0.0, 0.0, cz);
    if (lz > lx) {
        e.semiaxes = Eigen::Vector3d(lz, lx, lx);
        Eigen::Matrix3d axes;
        axes.col(0) = Eigen::Vector3d::UnitZ();
        axes.col(1) = Eigen::Vector3d::UnitX();
        axes.col(2) = Eigen::Vector3d::UnitY();
        e.axes = axes;
    } else {
        e.semiaxes = Eigen::Vector3d(lx, lx, lz);
    }
    return e;
}

} // namespace qse
