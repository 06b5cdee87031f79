#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "heatrk/common.hpp"
#include "heatrk/geometry.hpp"
#include "heatrk/heat_series.hpp"
#include "heatrk/kernels.hpp"
#include "heatrk/parallel.hpp"

namespace heatrk {

// Which boundary controls drive the rod, and therefore which reachable
// space, feature map, and reproducing kernel apply.
enum class scenario {
    left_only,   // u on x = 0 only
    right_only,  // u on x = 1 only
    anti_sym,    // u_r = -u_l
    sym,         // u_r = u_l
    both,        // independent (u_l, u_r)
    half_line,   // Dirichlet control of the half line at x = 0
};

inline std::string to_string(scenario s) {
    switch (s) {
        case scenario::left_only: return "left-only";
        case scenario::right_only: return "right-only";
        case scenario::anti_sym: return "anti-sym";
        case scenario::sym: return "sym";
        case scenario::both: return "both";
        case scenario::half_line: return "half-line";
    }
    return "unknown";
}

inline scenario scenario_from_string(const std::string& s) {
    if (s == "left-only") return scenario::left_only;
    if (s == "right-only") return scenario::right_only;
    if (s == "anti-sym") return scenario::anti_sym;
    if (s == "sym") return scenario::sym;
    if (s == "both") return scenario::both;
    if (s == "half-line") return scenario::half_line;
    throw domain_error("unknown scenario: " + s);
}

// Reproducing kernel of the scenario's reachable space. The anti-symmetric
// constraint u_r = -u_l turns the two boundary terms into the period-one
// theta derivative, whose Gram is the plus kernel; the symmetric constraint
// gives the signed four-term (minus) kernel.
inline kernel_kind scenario_kernel(scenario s) {
    switch (s) {
        case scenario::left_only: return kernel_kind::left;
        case scenario::right_only: return kernel_kind::right;
        case scenario::anti_sym: return kernel_kind::plus;
        case scenario::sym: return kernel_kind::minus;
        case scenario::both: return kernel_kind::full;
        case scenario::half_line: return kernel_kind::half_line;
    }
    return kernel_kind::left;
}

inline region_kind scenario_domain(scenario s) { return kernel_domain(scenario_kernel(s)); }

// Operator sign: the state is s * 2 * <Gram row, coefficients>; -1/2 for
// every scenario whose state is w = -2 (integral of dxtheta * u), +1/2 for
// the right boundary where the operator enters with +2.
inline double scenario_sign(scenario s) {
    return s == scenario::right_only ? 0.5 : -0.5;
}

// Uniformly sampled complex control on the midpoint grid t_k = (k+1/2) T/M.
struct control_signal {
    double T = 1.0;
    std::vector<cplx> samples;

    std::size_t size() const { return samples.size(); }
    double dt() const { return T / static_cast<double>(samples.size()); }
    double t_at(std::size_t k) const { return (static_cast<double>(k) + 0.5) * dt(); }

    double l2_norm() const {
        kahan_sum<double> acc;
        for (const cplx& v : samples) acc.add(std::norm(v));
        return std::sqrt(dt() * acc.value());
    }

    void validate() const {
        detail::require_time(T, "control_signal");
        if (samples.size() < 8) {
            throw domain_error("control_signal: needs at least 8 samples");
        }
        for (const cplx& v : samples) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw domain_error("control_signal: samples must be finite");
            }
        }
    }

    static control_signal zeros(double T, std::size_t M) {
        return {T, std::vector<cplx>(M, cplx{0.0, 0.0})};
    }
};

// Field values at evaluation sites, all reached at the common horizon T.
struct state_field {
    std::vector<cplx> points;
    std::vector<cplx> values;
    double T = 1.0;

    void validate() const {
        detail::require_time(T, "state_field");
        if (points.size() != values.size()) {
            throw domain_error("state_field: points and values must have equal length");
        }
    }
};

struct synthesis_result {
    std::vector<cplx> coefficients;            // representer weights c_j
    control_signal control;                    // reconstructed primary signal
    std::optional<control_signal> control_right;  // second signal, scenario both only
    double residual = 0.0;                     // max re-solve error at target points
    double norm_estimate = 0.0;                // sqrt(f^* (G + lambda I)^{-1} f)
    double lambda = 0.0;                       // regularization actually used
};

namespace detail {

inline void require_scenario_member(scenario sc, cplx p, const char* who) {
    if (!contains(scenario_domain(sc), p, kernel_margin)) {
        throw domain_error(std::string(who) + "(" + heatrk::to_string(sc) + "): point (" +
                           std::to_string(p.real()) + ", " + std::to_string(p.imag()) +
                           ") is outside " + heatrk::to_string(scenario_domain(sc)) +
                           " at margin 1e-6");
    }
}

}  // namespace detail

// Feature-map value h_z(t) for the single-signal scenarios; the state at z
// is 2 * scenario_sign * <u, h_z> in L^2(0,T). Scenario `both` carries a
// two-component feature and has no single complex value.
inline cplx feature(scenario sc, cplx z, double T, double t,
                    const truncation_policy& policy = {}) {
    detail::require_time(T, "feature");
    if (!(t > 0.0 && t < T)) throw domain_error("feature: t must lie strictly in (0, T)");
    if (sc == scenario::both) {
        throw domain_error(
            "feature(both): two-component feature map; use apply_operator or "
            "min_norm_control");
    }
    detail::require_scenario_member(sc, z, "feature");
    const double s = T - t;
    switch (sc) {
        case scenario::left_only:
            return std::conj(eval_dxtheta(z, s, period::two, policy));
        case scenario::right_only:
            return std::conj(eval_dxtheta(z + 1.0, s, period::two, policy));
        case scenario::anti_sym:
            return std::conj(eval_dxtheta(z, s, period::one, policy));
        case scenario::sym:
            return std::conj(eval_dxtheta(z, s, period::two, policy)) -
                   std::conj(eval_dxtheta(z + 1.0, s, period::two, policy));
        case scenario::half_line:
            return std::conj(eval_dxK(z, s));
        case scenario::both:
            break;
    }
    throw domain_error("feature: unknown scenario");
}

namespace detail {

// Integral of g(T - tau) over one signal cell, where g is a boundary
// influence kernel. Cells whose right edge lies in the last 5% of [0, T]
// are refined dyadically: the kernel peaks as tau -> T and the plain
// midpoint value is no longer trustworthy there.
template <class G>
cplx cell_integral(G& g, double T, double lo, double hi, bool refine) {
    const double width = hi - lo;
    cplx prev = width * g(T - 0.5 * (lo + hi));
    if (!refine) return prev;
    int panels = 2;
    for (int level = 1; level <= 20; ++level) {
        const double w = width / panels;
        kahan_sum<cplx> acc;
        for (int j = 0; j < panels; ++j) {
            acc.add(g(T - (lo + (j + 0.5) * w)));
        }
        const cplx cur = w * acc.value();
        if (std::abs(cur - prev) < 1e-8) return cur;
        prev = cur;
        panels *= 2;
    }
    throw quadrature_failure("apply_operator: endpoint cell refinement did not stabilize");
}

// One boundary term: coeff * integral_0^T g(T - tau) u(tau) d tau with u
// piecewise constant on its midpoint grid.
template <class G>
cplx boundary_term(G g, const control_signal& u, double coeff) {
    const double T = u.T;
    const double dt = u.dt();
    kahan_sum<cplx> acc;
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (u.samples[k] == cplx{0.0, 0.0}) continue;
        const double lo = static_cast<double>(k) * dt;
        const double hi = lo + dt;
        const bool refine = hi > 0.95 * T;
        acc.add(u.samples[k] * cell_integral(g, T, lo, hi, refine));
    }
    return coeff * acc.value();
}

}  // namespace detail

// Control-to-state map at the horizon: for the rod,
//   w(z,T) = -2 int_0^T dxtheta(z, T-tau) u_l(tau) dtau
//            +2 int_0^T dxtheta(z-1, T-tau) u_r(tau) dtau
// (dxtheta(z-1) = dxtheta(z+1) by 2-periodicity), and for the half line
//   v(z,T) = -2 int_0^T dxK(z, T-tau) u(tau) dtau.
// `u_left` is the scenario's primary signal; it is routed to the right
// boundary for right-only and mirrored per anti-sym/sym. Only scenario
// `both` reads `u_right`.
inline state_field apply_operator(scenario sc, const control_signal& u_left,
                                  const std::optional<control_signal>& u_right,
                                  const std::vector<cplx>& points,
                                  const truncation_policy& policy = {},
                                  unsigned threads = 1) {
    u_left.validate();
    policy.validate();
    if (sc == scenario::both) {
        if (!u_right) throw domain_error("apply_operator(both): u_right is required");
        u_right->validate();
        if (u_right->T != u_left.T || u_right->size() != u_left.size()) {
            throw domain_error("apply_operator(both): signals must share T and sample count");
        }
    }
    for (const cplx& p : points) detail::require_scenario_member(sc, p, "apply_operator");

    control_signal neg = u_left;
    for (cplx& v : neg.samples) v = -v;

    state_field out{points, std::vector<cplx>(points.size()), u_left.T};
    parallel_for(points.size(), threads, [&](std::size_t i) {
        const cplx z = points[i];
        cplx w{0.0, 0.0};
        if (sc == scenario::half_line) {
            auto g = [&](double s) { return eval_dxK(z, s); };
            w = detail::boundary_term(g, u_left, -2.0);
        } else {
            auto g_left = [&](double s) { return eval_dxtheta(z, s, period::two, policy); };
            auto g_right = [&](double s) {
                return eval_dxtheta(z + 1.0, s, period::two, policy);
            };
            switch (sc) {
                case scenario::left_only:
                    w = detail::boundary_term(g_left, u_left, -2.0);
                    break;
                case scenario::right_only:
                    w = detail::boundary_term(g_right, u_left, 2.0);
                    break;
                case scenario::anti_sym:
                    w = detail::boundary_term(g_left, u_left, -2.0) +
                        detail::boundary_term(g_right, neg, 2.0);
                    break;
                case scenario::sym:
                    w = detail::boundary_term(g_left, u_left, -2.0) +
                        detail::boundary_term(g_right, u_left, 2.0);
                    break;
                case scenario::both:
                    w = detail::boundary_term(g_left, u_left, -2.0) +
                        detail::boundary_term(g_right, *u_right, 2.0);
                    break;
                case scenario::half_line:
                    break;
            }
        }
        out.values[i] = w;
    });
    return out;
}

// Crank-Nicolson reference solver for d_t w = d_xx w on (0,1) with Dirichlet
// data w(0,t) = u_l(t), w(1,t) = u_r(t), w(x,0) = 0. Boundary samples are
// linearly interpolated from the midpoint grids (held flat beyond the first
// and last midpoints); the final state is sampled by linear interpolation
// in x. Independent of the kernel/series machinery by construction.
inline state_field fd_oracle(const control_signal& u_left, const control_signal& u_right,
                             int nx, int nt, const std::vector<double>& points) {
    u_left.validate();
    u_right.validate();
    if (u_left.T != u_right.T) throw domain_error("fd_oracle: signals must share T");
    if (nx < 100) throw domain_error("fd_oracle: nx must be >= 100");
    if (nt < 10 * nx) throw domain_error("fd_oracle: nt must be >= 10*nx");
    for (double x : points) {
        if (!(x > 0.0 && x < 1.0)) throw domain_error("fd_oracle: points must lie in (0,1)");
    }

    const double T = u_left.T;
    const double h = 1.0 / nx;
    const double dt = T / nt;
    const double r = dt / (2.0 * h * h);

    const auto boundary_at = [](const control_signal& u, double t) -> cplx {
        const double dtu = u.dt();
        const double pos = t / dtu - 0.5;
        if (pos <= 0.0) return u.samples.front();
        const auto last = static_cast<double>(u.size() - 1);
        if (pos >= last) return u.samples.back();
        const auto k = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(k);
        return u.samples[k] * (1.0 - frac) + u.samples[k + 1] * frac;
    };

    // Thomas factorization of the constant tridiagonal (1+2r, -r) system,
    // precomputed once.
    const int n = nx - 1;
    std::vector<double> cp(n);
    cp[0] = -r / (1.0 + 2.0 * r);
    for (int i = 1; i < n; ++i) cp[i] = -r / (1.0 + 2.0 * r + r * cp[i - 1]);

    std::vector<cplx> w(nx + 1, cplx{0.0, 0.0});
    std::vector<cplx> rhs(n), dp(n);
    for (int step = 0; step < nt; ++step) {
        const double t_new = (step + 1) * dt;
        const cplx bl = boundary_at(u_left, t_new);
        const cplx br = boundary_at(u_right, t_new);
        for (int i = 1; i <= n; ++i) {
            rhs[i - 1] = w[i] + r * (w[i - 1] - 2.0 * w[i] + w[i + 1]);
        }
        rhs[0] += r * bl;
        rhs[n - 1] += r * br;
        dp[0] = rhs[0] / (1.0 + 2.0 * r);
        for (int i = 1; i < n; ++i) {
            dp[i] = (rhs[i] + r * dp[i - 1]) / (1.0 + 2.0 * r + r * cp[i - 1]);
        }
        w[n] = dp[n - 1];
        for (int i = n - 1; i >= 1; --i) w[i] = dp[i - 1] - cp[i - 1] * w[i + 1];
        w[0] = bl;
        w[nx] = br;
    }

    state_field out{{}, {}, T};
    out.points.reserve(points.size());
    out.values.reserve(points.size());
    for (double x : points) {
        const double pos = x / h;
        const auto i = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(i);
        out.points.push_back(cplx{x, 0.0});
        out.values.push_back(w[i] * (1.0 - frac) + w[i + 1] * frac);
    }
    return out;
}

namespace detail {

struct gram_solve {
    Eigen::VectorXcd solution;
    double lambda = 0.0;
};

// Solve (G + lambda I) d = f by Cholesky with jitter escalation: start from
// the requested lambda (or the auto rule 1e-10 tr(G)/n), multiply by 10 on
// failure, give up after six escalations.
inline gram_solve solve_regularized(const Eigen::MatrixXcd& G, const Eigen::VectorXcd& f,
                                    std::optional<double> lambda) {
    const auto n = G.rows();
    const double auto_base = 1e-10 * G.trace().real() / static_cast<double>(n);
    double lam = lambda.value_or(auto_base);
    if (lam < 0.0) throw domain_error("min_norm_control: lambda must be >= 0 or auto");
    for (int attempt = 0; attempt <= 6; ++attempt) {
        Eigen::MatrixXcd A = G;
        A.diagonal().array() += lam;
        Eigen::LLT<Eigen::MatrixXcd> llt(A);
        if (llt.info() == Eigen::Success) {
            return {llt.solve(f), lam};
        }
        lam = (lam > 0.0) ? lam * 10.0 : std::max(auto_base, 1e-300);
    }
    throw ill_conditioned(
        "min_norm_control: Cholesky failed after jitter escalation (lambda reached " +
        std::to_string(lam) + ")");
}

inline void require_distinct(const std::vector<cplx>& pts, const char* who) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (pts[i] == pts[j]) {
                throw domain_error(std::string(who) + ": target points must be distinct (" +
                                   std::to_string(i) + " and " + std::to_string(j) + " match)");
            }
        }
    }
}

}  // namespace detail

// Tikhonov-regularized representer synthesis: build the scenario kernel's
// Gram over the target points, solve (G + lambda I) d = f, scale by the
// operator sign to get the representer weights c = s d, and resample the
// reconstructed control(s) on an M-point midpoint grid. norm_estimate is
// sqrt(f^* d), the regularized RKHS norm of the interpolated field; the
// control's own L^2 norm is available from the returned signal.
inline synthesis_result min_norm_control(scenario sc, const state_field& target,
                                         std::optional<double> lambda, int M,
                                         const truncation_policy& policy = {},
                                         unsigned threads = 1) {
    target.validate();
    policy.validate();
    if (target.points.empty()) throw domain_error("min_norm_control: target needs >= 1 point");
    if (M < 8) throw domain_error("min_norm_control: M must be >= 8");
    detail::require_distinct(target.points, "min_norm_control");
    for (const cplx& p : target.points) {
        detail::require_scenario_member(sc, p, "min_norm_control");
    }

    const kernel_spec spec{scenario_kernel(sc), target.T, policy};
    const gram_matrix G = gram(spec, target.points, threads);
    const auto n = static_cast<Eigen::Index>(target.points.size());
    Eigen::VectorXcd f(n);
    for (Eigen::Index i = 0; i < n; ++i) f(i) = target.values[static_cast<std::size_t>(i)];

    const auto solved = detail::solve_regularized(G.entries, f, lambda);
    const double s = scenario_sign(sc);
    std::vector<cplx> coeff(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) coeff[static_cast<std::size_t>(i)] = s * solved.solution(i);

    const double quad = (f.adjoint() * solved.solution)(0).real();
    const double norm_estimate = std::sqrt(std::max(0.0, quad));

    // resample the representer control(s) on the midpoint grid
    const double T = target.T;
    control_signal u = control_signal::zeros(T, static_cast<std::size_t>(M));
    std::optional<control_signal> u_right;
    const scenario feat_sc = (sc == scenario::both) ? scenario::left_only : sc;
    parallel_for(u.size(), threads, [&](std::size_t k) {
        const double t = u.t_at(k);
        kahan_sum<cplx> acc;
        for (std::size_t j = 0; j < coeff.size(); ++j) {
            acc.add(coeff[j] * feature(feat_sc, target.points[j], T, t, policy));
        }
        u.samples[k] = acc.value();
    });
    if (sc == scenario::both) {
        control_signal ur = control_signal::zeros(T, static_cast<std::size_t>(M));
        parallel_for(ur.size(), threads, [&](std::size_t k) {
            const double t = ur.t_at(k);
            kahan_sum<cplx> acc;
            for (std::size_t j = 0; j < coeff.size(); ++j) {
                // second feature component enters the joint signal negated
                acc.add(-coeff[j] * std::conj(eval_dxtheta(target.points[j] + 1.0, T - t,
                                                           period::two, policy)));
            }
            ur.samples[k] = acc.value();
        });
        u_right = std::move(ur);
    }

    const state_field resolved =
        apply_operator(sc, u, u_right, target.points, policy, threads);
    double residual = 0.0;
    for (std::size_t i = 0; i < target.values.size(); ++i) {
        residual = std::max(residual, std::abs(resolved.values[i] - target.values[i]));
    }

    return {std::move(coeff), std::move(u), std::move(u_right), residual, norm_estimate,
            solved.lambda};
}

// Numerical membership diagnostic. The target carries fit points first and
// probe points last (the two-part convention); `probe_points` must equal
// that tail and flags where the split sits. A kernel interpolant is fitted
// on the head and the max deviation at the probes is returned.
inline double membership_residual(scenario sc, const state_field& target,
                                  const std::vector<cplx>& probe_points, double lambda,
                                  const truncation_policy& policy = {},
                                  unsigned threads = 1) {
    target.validate();
    policy.validate();
    if (lambda < 0.0) throw domain_error("membership_residual: lambda must be >= 0");
    if (probe_points.empty() || probe_points.size() >= target.points.size()) {
        throw domain_error("membership_residual: probe set must be a proper, nonempty tail");
    }
    const std::size_t n_fit = target.points.size() - probe_points.size();
    for (std::size_t i = 0; i < probe_points.size(); ++i) {
        if (target.points[n_fit + i] != probe_points[i]) {
            throw domain_error(
                "membership_residual: probe_points must equal the tail of target.points");
        }
        for (std::size_t j = 0; j < n_fit; ++j) {
            if (probe_points[i] == target.points[j]) {
                throw domain_error("membership_residual: probe points must be disjoint "
                                   "from fit points");
            }
        }
        detail::require_scenario_member(sc, probe_points[i], "membership_residual");
    }

    std::vector<cplx> fit_pts(target.points.begin(), target.points.begin() + n_fit);
    detail::require_distinct(fit_pts, "membership_residual");
    for (const cplx& p : fit_pts) detail::require_scenario_member(sc, p, "membership_residual");

    const kernel_spec spec{scenario_kernel(sc), target.T, policy};
    const gram_matrix G = gram(spec, fit_pts, threads);
    Eigen::VectorXcd f(static_cast<Eigen::Index>(n_fit));
    for (std::size_t i = 0; i < n_fit; ++i) f(static_cast<Eigen::Index>(i)) = target.values[i];
    const auto solved = detail::solve_regularized(G.entries, f, lambda);

    double worst = 0.0;
    for (std::size_t i = 0; i < probe_points.size(); ++i) {
        kahan_sum<cplx> acc;
        for (std::size_t j = 0; j < n_fit; ++j) {
            acc.add(solved.solution(static_cast<Eigen::Index>(j)) *
                    eval_kernel(spec, probe_points[i], fit_pts[j]));
        }
        worst = std::max(worst, std::abs(acc.value() - target.values[n_fit + i]));
    }
    return worst;
}

}  // namespace heatrk
