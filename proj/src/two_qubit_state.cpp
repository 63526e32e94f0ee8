#include "qse/two_qubit_state.hpp"

#include <cmath>
#include <sstream>

#include "qse/errors.hpp"

namespace qse {

namespace {

using complexd = std::complex<double>;

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& x, const Eigen::Matrix2cd& y) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = x(i, j) * y;
    return out;
}

} // namespace

const Eigen::Matrix2cd& pauli(int axis) {
    static const Eigen::Matrix2cd sx = [] {
        Eigen::Matrix2cd m;
        m << 0, 1, 1, 0;
        return m;
    }();
    static const Eigen::Matrix2cd sy = [] {
        Eigen::Matrix2cd m;
        m << complexd(0, 0), complexd(0, -1), complexd(0, 1), complexd(0, 0);
        return m;
    }();
    static const Eigen::Matrix2cd sz = [] {
        Eigen::Matrix2cd m;
        m << 1, 0, 0, -1;
        return m;
    }();
    switch (axis) {
        case 0: return sx;
        case 1: return sy;
        default: return sz;
    }
}

TwoQubitDensity from_initial_family(const InitialFamilyParams& params) {
    const double p = params.p;
    const double theta = params.theta;
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("from_initial_family: p must lie in [0, 1], got " +
                          std::to_string(p));
    }
    if (!(theta >= 0.0 && theta <= M_PI / 2.0)) {
        throw DomainError("from_initial_family: theta must lie in [0, pi/2], got " +
                          std::to_string(theta));
    }

    const double c = std::cos(theta), s = std::sin(theta);
    Eigen::Vector4cd psi;
    psi << c, 0, 0, s;

    Eigen::Matrix4cd rho = p * (psi * psi.adjoint());
    // (1-p) * rho_A x I/2 with rho_A = diag(cos^2, sin^2).
    rho(0, 0) += (1.0 - p) * c * c / 2.0;
    rho(1, 1) += (1.0 - p) * c * c / 2.0;
    rho(2, 2) += (1.0 - p) * s * s / 2.0;
    rho(3, 3) += (1.0 - p) * s * s / 2.0;
    return {rho};
}

namespace {

struct PauliKron {
    Eigen::Matrix4cd a_side[3];   // sigma_m x I
    Eigen::Matrix4cd b_side[3];   // I x sigma_n
    Eigen::Matrix4cd corr[3][3];  // sigma_m x sigma_n

    PauliKron() {
        const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
        for (int m = 0; m < 3; ++m) {
            a_side[m] = kron2(pauli(m), id);
            b_side[m] = kron2(id, pauli(m));
            for (int n = 0; n < 3; ++n) corr[m][n] = kron2(pauli(m), pauli(n));
        }
    }
};

const PauliKron& pauli_kron() {
    static const PauliKron k;
    return k;
}

double trace_with(const Eigen::Matrix4cd& op, const Eigen::Matrix4cd& rho) {
    complexd tr{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) tr += op(i, j) * rho(j, i);
    return tr.real();
}

} // namespace

PauliForm pauli_decompose(const TwoQubitDensity& rho) {
    const PauliKron& k = pauli_kron();
    PauliForm pf;
    for (int m = 0; m < 3; ++m) {
        pf.a(m) = trace_with(k.a_side[m], rho.m);
        pf.b(m) = trace_with(k.b_side[m], rho.m);
        for (int n = 0; n < 3; ++n) pf.T(m, n) = trace_with(k.corr[m][n], rho.m);
    }
    return pf;
}

TwoQubitDensity pauli_recompose(const PauliForm& pf) {
    const PauliKron& k = pauli_kron();
    Eigen::Matrix4cd out = Eigen::Matrix4cd::Identity();
    for (int m = 0; m < 3; ++m) {
        out += pf.a(m) * k.a_side[m];
        out += pf.b(m) * k.b_side[m];
        for (int n = 0; n < 3; ++n) out += pf.T(m, n) * k.corr[m][n];
    }
    return {0.25 * out};
}

StateDiagnostics validate(const TwoQubitDensity& rho) {
    StateDiagnostics d{};
    d.hermiticity_defect = (rho.m - rho.m.adjoint()).cwiseAbs().maxCoeff();
    d.trace_defect = std::abs(rho.m.trace() - complexd(1.0, 0.0));
    const Eigen::Matrix4cd herm = 0.5 * (rho.m + rho.m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(herm,
                                                       Eigen::EigenvaluesOnly);
    d.min_eigenvalue = es.eigenvalues().minCoeff();
    return d;
}

Eigen::Matrix2cd partial_trace_A(const TwoQubitDensity& rho) {
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out(i, j) = rho.m(i, j) + rho.m(2 + i, 2 + j);
    return out;
}

Eigen::Matrix2cd partial_trace_B(const TwoQubitDensity& rho) {
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out(i, j) = rho.m(2 * i, 2 * j) + rho.m(2 * i + 1, 2 * j + 1);
    return out;
}

Eigen::Vector3d bloch_vector(const Eigen::Matrix2cd& rho1) {
    Eigen::Vector3d v;
    for (int m = 0; m < 3; ++m) v(m) = (pauli(m) * rho1).trace().real();
    return v;
}

TwoQubitDensity swap_qubits(const TwoQubitDensity& rho) {
    auto flip = [](int idx) { return (idx >> 1) | ((idx & 1) << 1); };
    Eigen::Matrix4cd out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out(flip(i), flip(j)) = rho.m(i, j);
    return {out};
}

double trace_distance(const TwoQubitDensity& x, const TwoQubitDensity& y) {
    const Eigen::Matrix4cd diff = x.m - y.m;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(
        0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

} // namespace qse
