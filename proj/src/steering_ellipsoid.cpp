#include "qse/steering_ellipsoid.hpp"

#include <cmath>

#include "qse/errors.hpp"

namespace qse {

namespace {

// A marginal is treated as pure once 1 - |v|^2 falls below this floor; past
// that point the ellipsoid matrix is 0/0 at double precision. Kept near the
// representability limit so weakly decayed states (1 - |v|^2 ~ 1e-12) still
// resolve their genuine, finite ellipsoid.
constexpr double kPureMarginTol = 1e-12;

SteeringEllipsoid point_ellipsoid(const Eigen::Vector3d& at) {
    SteeringEllipsoid e;
    e.center = at;
    e.semiaxes.setZero();
    e.axes.setIdentity();
    e.degenerate = true;
    return e;
}

} // namespace

SteeringEllipsoid ellipsoid_of_B(const PauliForm& pf) {
    const double denom = 1.0 - pf.a.squaredNorm();
    if (denom <= kPureMarginTol) return point_ellipsoid(pf.b);

    const Eigen::Matrix3d shifted = pf.T - pf.a * pf.b.transpose();
    const Eigen::Matrix3d boost =
        Eigen::Matrix3d::Identity() + pf.a * pf.a.transpose() / denom;
    Eigen::Matrix3d q = shifted.transpose() * boost * shifted / denom;
    q = 0.5 * (q + q.transpose().eval());

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(q);

    SteeringEllipsoid e;
    e.center = (pf.b - pf.T.transpose() * pf.a) / denom;
    // Eigen sorts ascending; flip to descending.
    for (int i = 0; i < 3; ++i) {
        const double lam = std::max(0.0, es.eigenvalues()(2 - i));
        e.semiaxes(i) = std::sqrt(lam);
        e.axes.col(i) = es.eigenvectors().col(2 - i);
    }
    if (e.axes.determinant() < 0.0) e.axes.col(2) = -e.axes.col(2);
    e.degenerate = false;
    return e;
}

SteeringEllipsoid ellipsoid_of_A(const PauliForm& pf) {
    // One code path for both parties: exchange roles and reuse.
    PauliForm swapped;
    swapped.a = pf.b;
    swapped.b = pf.a;
    swapped.T = pf.T.transpose();
    return ellipsoid_of_B(swapped);
}

Eigen::Vector3d steered_bloch(const PauliForm& pf, const Eigen::Vector3d& e,
                              Direction dir) {
    if (e.norm() > 1.0 + 1e-12) {
        throw DomainError("steered_bloch: measurement vector must satisfy |e| <= 1");
    }
    const Eigen::Vector3d& steering = dir == Direction::a_to_b ? pf.a : pf.b;
    const Eigen::Vector3d& steered = dir == Direction::a_to_b ? pf.b : pf.a;
    const double denom = 1.0 + steering.dot(e);
    if (denom <= 1e-12) {
        throw NumericalError("steered_bloch: singular measurement, 1 + a.e = " +
                             std::to_string(denom));
    }
    const Eigen::Vector3d mapped =
        dir == Direction::a_to_b ? Eigen::Vector3d(pf.T.transpose() * e)
                                 : Eigen::Vector3d(pf.T * e);
    return (steered + mapped) / denom;
}

Eigen::Matrix4cd partial_transpose_B(const Eigen::Matrix4cd& m) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            // Transpose within each 2x2 block (Bob indices).
            out.block<2, 2>(2 * i, 2 * j) = m.block<2, 2>(2 * i, 2 * j).transpose();
    return out;
}

SeparabilityResult is_separable(const TwoQubitDensity& rho) {
    const Eigen::Matrix4cd pt = partial_transpose_B(rho.m);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(0.5 * (pt + pt.adjoint()),
                                                       Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    return {min_eig >= -1e-10, min_eig};
}

Eigen::Matrix3d align_axes(const Eigen::Matrix3d& axes,
                           const Eigen::Vector3d& semiaxes,
                           const Eigen::Matrix3d& reference) {
    const double scale = std::max(semiaxes(0), 1.0);
    const double group_tol = 1e-8 * scale;

    Eigen::Matrix3d out = axes;
    int lo = 0;
    while (lo < 3) {
        int hi = lo + 1;
        while (hi < 3 && std::abs(semiaxes(hi - 1) - semiaxes(hi)) <= group_tol) ++hi;
        const int dim = hi - lo;
        if (dim > 1) {
            // Project the reference columns onto the degenerate eigenspace and
            // re-orthonormalize, so the basis follows the reference smoothly.
            const Eigen::Matrix3d basis = axes.block(0, lo, 3, dim) *
                                          axes.block(0, lo, 3, dim).transpose();
            Eigen::Matrix3d cand = basis * reference.block(0, lo, 3, dim);
            for (int k = 0; k < dim; ++k) {
                Eigen::Vector3d v = cand.col(k);
                for (int prev = 0; prev < k; ++prev)
                    v -= out.col(lo + prev).dot(v) * out.col(lo + prev);
                if (v.norm() > 1e-8) {
                    out.col(lo + k) = v.normalized();
                } else {
                    // Reference degenerate with the subspace; keep solver output
                    // orthogonalized against what is already chosen.
                    v = axes.col(lo + k);
                    for (int prev = 0; prev < k; ++prev)
                        v -= out.col(lo + prev).dot(v) * out.col(lo + prev);
                    out.col(lo + k) = v.normalized();
                }
            }
        }
        lo = hi;
    }
    for (int k = 0; k < 3; ++k) {
        if (out.col(k).dot(reference.col(k)) < 0.0) out.col(k) = -out.col(k);
    }
    return out;
}

} // namespace qse
