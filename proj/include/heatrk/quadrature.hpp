#pragma once

#include <array>
#include <cmath>
#include <type_traits>
#include <utility>

#include "heatrk/common.hpp"

namespace heatrk {
namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15
// constants). Nodes are the positive abscissae; the rule is symmetric.
inline constexpr std::array<double, 8> gk_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};

inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Weights of the embedded Gauss rule; nonzero only at the odd Kronrod
// indices (1, 3, 5, 7).
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
struct panel_result {
    using value_type = std::invoke_result_t<F, double>;
    value_type value;
    double error;
};

template <class F>
panel_result<F> gauss_kronrod_panel(F& f, double a, double b) {
    using V = std::invoke_result_t<F, double>;
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    V kronrod{};
    V gauss{};
    for (std::size_t i = 0; i < gk_nodes.size(); ++i) {
        const double x = gk_nodes[i];
        V fs;
        if (i + 1 == gk_nodes.size()) {
            fs = f(c);
        } else {
            fs = f(c - h * x) + f(c + h * x);
        }
        kronrod += kronrod_weights[i] * fs;
        if (i % 2 == 1) gauss += gauss_weights[i / 2] * fs;
    }
    kronrod *= h;
    gauss *= h;
    return {kronrod, std::abs(kronrod - gauss)};
}

template <class F>
std::invoke_result_t<F, double> integrate_rec(F& f, double a, double b, double tol, int depth) {
    const auto p = gauss_kronrod_panel(f, a, b);
    if (p.error <= tol || p.error <= 1e-16 * std::abs(p.value)) return p.value;
    if (depth <= 0) {
        throw quadrature_failure("adaptive quadrature: bisection depth cap reached on [" +
                                 std::to_string(a) + ", " + std::to_string(b) + "]");
    }
    const double c = 0.5 * (a + b);
    return integrate_rec(f, a, c, 0.5 * tol, depth - 1) +
           integrate_rec(f, c, b, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration of f over [a, b] to absolute tolerance
// `tol`. The integrand may return double or std::complex<double>; endpoint
// values are never requested, so integrable endpoint blow-ups are fine as
// long as f itself returns finite values at the interior nodes.
template <class F>
std::invoke_result_t<F, double> integrate(F f, double a, double b, double tol,
                                          int max_depth = 48) {
    if (!(b > a)) throw domain_error("integrate: requires b > a");
    if (!(tol > 0.0)) throw domain_error("integrate: requires tol > 0");
    return detail::integrate_rec(f, a, b, tol, max_depth);
}

}  // namespace heatrk
