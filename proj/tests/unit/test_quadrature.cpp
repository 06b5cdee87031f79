#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "heatrk/quadrature.hpp"

using heatrk::integrate;

TEST_CASE("polynomials integrate exactly", "[quadrature]") {
    const double v = integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
    CHECK(std::abs(v - 1.0 / 3.0) < 1e-15);
}

TEST_CASE("smooth integrands hit tight tolerances", "[quadrature]") {
    const double v = integrate([](double x) { return std::sin(x); }, 0.0, heatrk::pi, 1e-13);
    CHECK(std::abs(v - 2.0) < 1e-12);

    const double w = integrate([](double x) { return std::cos(50.0 * x); }, 0.0, 1.0, 1e-12);
    CHECK(std::abs(w - std::sin(50.0) / 50.0) < 1e-10);
}

TEST_CASE("endpoint behaviour", "[quadrature]") {
    // nodes are interior, so an endpoint blow-up that decays essentially
    // (the shape of the kernels' time integrand) converges cleanly:
    // substituting u = 1/x gives  int_0^1 x^-3 exp(-1/x) dx = 2/e
    const double v =
        integrate([](double x) { return std::exp(-1.0 / x) / (x * x * x); }, 0.0, 1.0, 1e-11);
    CHECK(std::abs(v - 2.0 / std::exp(1.0)) < 1e-10);

    // a square-root kink is mild enough for the bisection budget
    const double w = integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-10);
    CHECK(std::abs(w - 2.0 / 3.0) < 1e-9);

    // an algebraic endpoint singularity needs more dyadic levels than the
    // tolerance-halving refinement allows, and must fail loudly
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10),
                    heatrk::quadrature_failure);
}

TEST_CASE("complex integrands work", "[quadrature]") {
    const std::complex<double> v = integrate(
        [](double t) { return std::exp(std::complex<double>(0.0, t)); }, 0.0, 1.0, 1e-13);
    CHECK(std::abs(v.real() - std::sin(1.0)) < 1e-12);
    CHECK(std::abs(v.imag() - (1.0 - std::cos(1.0))) < 1e-12);
}

TEST_CASE("non-integrable singularity fails loudly", "[quadrature]") {
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-6),
                    heatrk::quadrature_failure);
}
