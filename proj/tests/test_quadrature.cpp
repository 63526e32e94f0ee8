#include "doctest.h"

#include <cmath>

#include "qse/errors.hpp"
#include "qse/quadrature.hpp"

using qse::quad::Options;
using qse::quad::integrate;

TEST_CASE("polynomial and trig integrals") {
    CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI) ==
          doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("oscillatory integrand converges") {
    const double val = integrate([](double x) { return std::cos(40.0 * x); }, 0.0,
                                 50.0, {1e-12, 1e-12, 100000});
    CHECK(val == doctest::Approx(std::sin(2000.0) / 40.0).epsilon(1e-10));
}

TEST_CASE("complex integrand") {
    const auto val = integrate(
        [](double x) { return std::exp(std::complex<double>(0.0, -x)); }, 0.0, 1.0);
    CHECK(std::abs(val - std::complex<double>(std::sin(1.0), std::cos(1.0) - 1.0)) <
          1e-13);
}

TEST_CASE("integrable endpoint singularity") {
    const double val =
        integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0,
                  {1e-10, 1e-10, 200000});
    CHECK(val == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("exhausted interval budget throws with diagnostics") {
    Options opt;
    opt.max_intervals = 4;
    CHECK_THROWS_AS(integrate([](double x) { return std::cos(300.0 * x); }, 0.0,
                              70.0, opt),
                    qse::NumericalError);
}
