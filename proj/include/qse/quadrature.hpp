#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "qse/errors.hpp"

namespace qse::quad {

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_intervals = 20000;
};

namespace detail {

// Gauss-Kronrod 7-15 abscissae and weights on [-1, 1].
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename T>
struct Panel {
    double a, b, error;
    T value;
    bool operator<(const Panel& o) const { return error < o.error; }
};

// One (G7, K15) panel; the error estimate follows QUADPACK's heuristic.
template <typename T, typename F>
Panel<T> gk15(const F& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);

    T fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(mid - half * kXgk[i]);
        fv[14 - i] = f(mid + half * kXgk[i]);
    }
    fv[7] = f(mid);

    T gauss{};
    for (int i = 0; i < 3; ++i) gauss += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    gauss += kWg[3] * fv[7];

    T kron{};
    for (int i = 0; i < 7; ++i) kron += kWgk[i] * (fv[i] + fv[14 - i]);
    kron += kWgk[7] * fv[7];

    double err = std::abs(kron - gauss) * std::abs(half);
    err = std::min(err, 200.0 * err * std::sqrt(std::max(err, 1e-300)));
    return {a, b, err, kron * half};
}

} // namespace detail

// Adaptive Gauss-Kronrod (G7, K15) integration of f over [a, b]. The result
// type follows the integrand (double or std::complex<double>). Throws
// NumericalError when the interval budget is exhausted first.
template <typename F>
auto integrate(F&& f, double a, double b, const Options& opt = {})
    -> decltype(f(a) + f(b)) {
    using T = decltype(f(a) + f(b));
    using detail::Panel;

    auto first = detail::gk15<T>(f, a, b);
    std::vector<Panel<T>> heap{first};
    double total_err = first.error;
    T total = first.value;

    int splits = 0;
    while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
        if (++splits > opt.max_intervals) {
            std::ostringstream msg;
            msg << "adaptive quadrature did not converge on [" << a << ", " << b
                << "]: error " << total_err << " after " << splits
                << " subdivisions (tol abs=" << opt.abs_tol
                << " rel=" << opt.rel_tol << ")";
            throw NumericalError(msg.str());
        }
        std::pop_heap(heap.begin(), heap.end());
        Panel<T> p = heap.back();
        heap.pop_back();
        const double m = 0.5 * (p.a + p.b);
        auto left = detail::gk15<T>(f, p.a, m);
        auto right = detail::gk15<T>(f, m, p.b);
        total += left.value + right.value - p.value;
        total_err += left.error + right.error - p.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end());
    }

    // Re-sum left to right so the result does not depend on heap layout.
    std::sort(heap.begin(), heap.end(),
              [](const Panel<T>& x, const Panel<T>& y) { return x.a < y.a; });
    T sum{};
    for (const auto& p : heap) sum += p.value;
    return sum;
}

} // namespace qse::quad
