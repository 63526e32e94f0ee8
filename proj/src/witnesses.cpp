#include "qse/witnesses.hpp"

#include <algorithm>
#include <cmath>

#include "qse/errors.hpp"

namespace qse {

namespace {

using complexd = std::complex<double>;

const Eigen::Matrix4cd& sigma_yy() {
    static const Eigen::Matrix4cd m = [] {
        Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
        out(0, 3) = -1.0;
        out(1, 2) = 1.0;
        out(2, 1) = 1.0;
        out(3, 0) = -1.0;
        return out;
    }();
    return m;
}

} // namespace

double concurrence(const TwoQubitDensity& rho) {
    const Eigen::Matrix4cd& yy = sigma_yy();
    const Eigen::Matrix4cd spun = rho.m * yy * rho.m.conjugate() * yy;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(spun, false);

    double roots[4];
    for (int i = 0; i < 4; ++i) {
        double lam = es.eigenvalues()(i).real();
        if (lam < 0.0) lam = 0.0;  // clamp numerical negativity
        roots[i] = std::sqrt(lam);
    }
    std::sort(roots, roots + 4, std::greater<>());
    const double c = roots[0] - roots[1] - roots[2] - roots[3];
    return std::clamp(c, 0.0, 1.0);
}

LurResult lur_witness(const TwoQubitDensity& rho, Direction dir) {
    const PauliForm pf = pauli_decompose(rho);
    // For a_to_b each setting contributes the compensated variance
    // var(A_i + alpha_i B_i) with alpha_i = -Cov(A_i, B_i)/var(B_i), i.e.
    // var(A_i) - Cov^2/var(B_i); b_to_a mirrors the roles.
    const Eigen::Vector3d& residual = dir == Direction::a_to_b ? pf.a : pf.b;
    const Eigen::Vector3d& compensator = dir == Direction::a_to_b ? pf.b : pf.a;

    double var_sum = 0.0;
    bool degenerate = false;
    for (int i = 0; i < 3; ++i) {
        const double var_res = 1.0 - residual(i) * residual(i);
        const double var_comp = 1.0 - compensator(i) * compensator(i);
        const double cov = pf.T(i, i) - pf.a(i) * pf.b(i);
        if (var_comp < 1e-12) {
            degenerate = true;  // alpha_i = 0: no compensation from this setting
            var_sum += var_res;
        } else {
            var_sum += var_res - cov * cov / var_comp;
        }
    }
    return {2.0 - var_sum, degenerate};
}

WitnessPair asymptotic_witnesses(const AsymptoticWitnessParams& params, double t) {
    const double p = params.p, theta = params.theta;
    if (!(p >= 0.0 && p <= 1.0) || !(theta >= 0.0 && theta <= M_PI / 2.0) ||
        !(params.zA >= 0.0 && params.zA <= 1.0) ||
        !(params.zB >= 0.0 && params.zB <= 1.0) || params.ebA > 0.0 ||
        params.ebB > 0.0) {
        throw DomainError("asymptotic_witnesses: parameters outside domain");
    }

    const double uA = params.zA * params.zA;
    const double uB = params.zB * params.zB;
    const double s2 = std::sin(theta) * std::sin(theta);
    const double s4 = s2 * s2;
    const double c2 = std::cos(theta) * std::cos(theta);
    const double cos2t = std::cos(2.0 * theta);
    const double sin2t = std::sin(2.0 * theta);
    const double r = p * cos2t - 1.0;

    double hA = 4.0 * s2 * (uB * p * p * c2 - 1.0);
    if (s4 > 0.0) {
        const double den = r * (2.0 + r * uB);
        hA -= 4.0 * uA * s4 * (2.0 + uB * p * p - uB) / den;
        hA -= 8.0 * p * uA * s4 * cos2t * (uB + p * uB - 1.0) / den;
    }

    const double den_b = 1.0 - uA * s2;
    double hB = (uB * (1.0 + p * p * cos2t * cos2t) - 2.0) / den_b;
    hB += uA * p * p * sin2t * sin2t + uA * (2.0 - uB + uB * p * p) * s2 / den_b;
    hB += 2.0 * p * cos2t * (1.0 - uB + uA * (uB * (1.0 + p) - 1.0) * s2) / den_b;

    const double osc =
        p * p * std::cos(2.0 * (params.ebA + params.ebB) * t) * sin2t * sin2t;
    return {uA * (hA + uB * osc), uB * (hB + uA * osc)};
}

std::vector<WitnessSample> witness_series(const EvolvedStateSeries& series) {
    std::vector<WitnessSample> out;
    out.reserve(series.times.size());
    for (std::size_t k = 0; k < series.times.size(); ++k) {
        const TwoQubitDensity& rho = series.states[k];
        out.push_back({series.times[k], concurrence(rho),
                       lur_witness(rho, Direction::a_to_b).value,
                       lur_witness(rho, Direction::b_to_a).value});
    }
    return out;
}

} // namespace qse
