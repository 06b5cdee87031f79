#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "heatrk/geometry.hpp"
#include "heatrk/kernels.hpp"

using heatrk::cplx;
using heatrk::kernel_kind;
using heatrk::kernel_spec;

namespace {

using cplxl = std::complex<long double>;

constexpr long double pi_l = 3.141592653589793238462643383279502884L;

// Independent closed form for the one-shift block, using the other algebraic
// grouping and the plain complex exponential.
cplxl k0_ld(cplxl z, cplxl w, long double T) {
    const cplxl wc = std::conj(w);
    const cplxl zeta = z * z + wc * wc;
    return z * wc / pi_l * std::exp(-zeta / (4.0L * T)) *
           (1.0L / (zeta * zeta) + 1.0L / (4.0L * T * zeta));
}

cplx k0_ref(cplx z, cplx w, double T) {
    const cplxl v = k0_ld({z.real(), z.imag()}, {w.real(), w.imag()}, T);
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

// Direct lattice series in extended precision; sign = -1 gives (-1)^{n+m}.
cplx series_ld(cplx z, cplx w, double T, double step, double sign, int N = 40) {
    cplxl acc{0.0L, 0.0L};
    const cplxl zl{z.real(), z.imag()};
    const cplxl wl{w.real(), w.imag()};
    for (int n = -N; n <= N; ++n) {
        for (int m = -N; m <= N; ++m) {
            const long double s = (sign < 0.0 && ((n + m) % 2 != 0)) ? -1.0L : 1.0L;
            acc += s * k0_ld(zl + static_cast<long double>(step * n),
                             wl + static_cast<long double>(step * m), T);
        }
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

}  // namespace

TEST_CASE("one-shift block matches the independent grouping", "[kernels]") {
    CHECK(std::abs(heatrk::eval_K0({1.0, 0.0}, {1.0, 0.0}, 1.0) - 0.07239926447254043) < 1e-15);

    const auto zs = heatrk::sample_points(heatrk::region_kind::sector, 30, 0.05, 21);
    const auto ws = heatrk::sample_points(heatrk::region_kind::sector, 30, 0.05, 22);
    for (std::size_t i = 0; i < zs.size(); ++i) {
        for (double T : {0.25, 1.0, 4.0}) {
            const cplx a = heatrk::eval_K0(zs[i], ws[i], T);
            const cplx b = k0_ref(zs[i], ws[i], T);
            CHECK(std::abs(a - b) <= 1e-13 * std::abs(b));
        }
    }
    CHECK_THROWS_AS(heatrk::eval_K0({-1.0, 0.0}, {1.0, 0.0}, 1.0), heatrk::domain_error);
}

TEST_CASE("series kernels match direct extended-precision sums", "[kernels]") {
    const double T = 1.0;
    const auto zq = heatrk::sample_points(heatrk::region_kind::square_q, 8, 0.05, 23);
    const auto wq = heatrk::sample_points(heatrk::region_kind::square_q, 8, 0.05, 24);
    const kernel_spec leftk{kernel_kind::left, T, {}};
    const kernel_spec plusk{kernel_kind::plus, T, {}};
    const kernel_spec minusk{kernel_kind::minus, T, {}};
    const kernel_spec fullk{kernel_kind::full, T, {}};
    for (std::size_t i = 0; i < zq.size(); ++i) {
        const cplx z = zq[i], w = wq[i];
        CHECK(std::abs(heatrk::eval_kernel(leftk, z, w) - series_ld(z, w, T, 2.0, +1.0)) <
              2e-12);
        CHECK(std::abs(heatrk::eval_kernel(plusk, z, w) - series_ld(z, w, T, 1.0, +1.0)) <
              2e-12);
        CHECK(std::abs(heatrk::eval_kernel(minusk, z, w) - series_ld(z, w, T, 1.0, -1.0)) <
              2e-12);
        const cplx full_ref = series_ld(z, w, T, 2.0, +1.0) +
                              series_ld(z + 1.0, w + 1.0, T, 2.0, +1.0);
        CHECK(std::abs(heatrk::eval_kernel(fullk, z, w) - full_ref) < 4e-12);
    }

    const auto zr = heatrk::sample_points(heatrk::region_kind::shifted_d, 8, 0.05, 25);
    const auto wr = heatrk::sample_points(heatrk::region_kind::shifted_d, 8, 0.05, 26);
    const kernel_spec rightk{kernel_kind::right, T, {}};
    for (std::size_t i = 0; i < zr.size(); ++i) {
        CHECK(std::abs(heatrk::eval_kernel(rightk, zr[i], wr[i]) -
                       series_ld(zr[i] + 1.0, wr[i] + 1.0, T, 2.0, +1.0)) < 2e-12);
    }
}

TEST_CASE("frozen kernel value on the rod", "[kernels]") {
    const kernel_spec leftk{kernel_kind::left, 1.0, {}};
    CHECK(std::abs(heatrk::eval_kernel(leftk, {0.6, 0.0}, {0.6, 0.0}) - 0.15994299917070504) <
          1e-15);
}

TEST_CASE("half-line kernel scales between horizons", "[kernels]") {
    const auto zs = heatrk::sample_points(heatrk::region_kind::sector, 10, 0.05, 27);
    const auto ws = heatrk::sample_points(heatrk::region_kind::sector, 10, 0.05, 28);
    for (double T : {0.3, 2.0, 7.0}) {
        const kernel_spec big{kernel_kind::half_line, T, {}};
        const kernel_spec unit{kernel_kind::half_line, 1.0, {}};
        const double rT = std::sqrt(T);
        for (std::size_t i = 0; i < zs.size(); ++i) {
            const cplx lhs = T * heatrk::eval_kernel(big, zs[i], ws[i]);
            const cplx rhs = heatrk::eval_kernel(unit, zs[i] / rT, ws[i] / rT);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
        }
    }
}

TEST_CASE("kernel domains and names", "[kernels]") {
    using heatrk::kernel_domain;
    using heatrk::region_kind;
    CHECK(kernel_domain(kernel_kind::k0) == region_kind::sector);
    CHECK(kernel_domain(kernel_kind::left) == region_kind::square_d);
    CHECK(kernel_domain(kernel_kind::right) == region_kind::shifted_d);
    CHECK(kernel_domain(kernel_kind::plus) == region_kind::square_q);
    CHECK(kernel_domain(kernel_kind::minus) == region_kind::square_q);
    CHECK(kernel_domain(kernel_kind::full) == region_kind::square_q);
    CHECK(kernel_domain(kernel_kind::half_line) == region_kind::sector);
    CHECK(kernel_domain(kernel_kind::bergman_sector) == region_kind::sector);
    CHECK(kernel_domain(kernel_kind::hardy_pullback) == region_kind::sector);
    CHECK(kernel_domain(kernel_kind::bergman_halfplane) == region_kind::half_plane);

    for (kernel_kind k : {kernel_kind::k0, kernel_kind::left, kernel_kind::right,
                          kernel_kind::plus, kernel_kind::minus, kernel_kind::full,
                          kernel_kind::half_line, kernel_kind::bergman_sector,
                          kernel_kind::hardy_pullback, kernel_kind::bergman_halfplane}) {
        CHECK(heatrk::kernel_from_string(heatrk::to_string(k)) == k);
    }
    CHECK_THROWS_AS(heatrk::kernel_from_string("bogus"), heatrk::domain_error);
}

TEST_CASE("membership is enforced with a kind-specific message", "[kernels]") {
    const kernel_spec leftk{kernel_kind::left, 1.0, {}};
    CHECK_THROWS_WITH(heatrk::eval_kernel(leftk, {1.5, 0.9}, {0.5, 0.0}),
                      Catch::Matchers::ContainsSubstring("outside"));
    const kernel_spec kb{kernel_kind::bergman_halfplane, 1.0, {}};
    CHECK_THROWS_AS(heatrk::eval_kernel(kb, {-0.5, 0.0}, {0.5, 0.0}), heatrk::domain_error);
}

TEST_CASE("pole guard trips on the excluded diagonal", "[kernels]") {
    // white-box: the raw block has a pole at z^2 + conj(w)^2 = 0, which the
    // public domains exclude
    CHECK_THROWS_AS(heatrk::detail::k0_term({1.0, 0.0}, {0.0, 1.0}, 1.0),
                    heatrk::pole_proximity);
}

TEST_CASE("gram matrices are hermitian and tolerate duplicates", "[kernels]") {
    const kernel_spec plusk{kernel_kind::plus, 1.0, {}};
    auto pts = heatrk::sample_points(heatrk::region_kind::square_q, 6, 0.15, 29);
    const auto g = heatrk::gram(plusk, pts);
    for (Eigen::Index i = 0; i < g.entries.rows(); ++i) {
        CHECK(g.entries(i, i).imag() == 0.0);
        for (Eigen::Index j = 0; j < g.entries.cols(); ++j) {
            CHECK(std::abs(g.entries(i, j) - std::conj(g.entries(j, i))) < 1e-15);
        }
    }
    CHECK(heatrk::psd_check(g, 1e-10).passes);

    pts.push_back(pts.front());  // duplicated point: singular but still PSD
    CHECK(heatrk::psd_check(heatrk::gram(plusk, pts), 1e-10).passes);

    pts.push_back({5.0, 0.0});  // outside square-q
    CHECK_THROWS_WITH(heatrk::gram(plusk, pts),
                      Catch::Matchers::ContainsSubstring("gram entry"));
}
