#pragma once

#include <Eigen/Dense>
#include <cfloat>
#include <cmath>
#include <string>
#include <vector>

#include "heatrk/common.hpp"
#include "heatrk/geometry.hpp"
#include "heatrk/heat_series.hpp"
#include "heatrk/parallel.hpp"

namespace heatrk {

enum class kernel_kind {
    k0,                 // one-shift building block on the sector
    left,               // left-boundary rod kernel, double series, period 2
    right,              // right-boundary rod kernel, shifted left series
    plus,               // symmetric-control kernel, double series, period 1
    minus,              // antisymmetric-control kernel, four-term combination
    full,               // two-sided kernel: left(z,w) + left(z+1,w+1)
    half_line,          // closed-form half-line kernel
    bergman_sector,     // 4 z conj(w) / (z^2 + conj(w)^2)^2
    hardy_pullback,     // 1 / (z^2 + conj(w)^2)
    bergman_halfplane,  // 1 / (z + conj(w))^2
};

inline std::string to_string(kernel_kind k) {
    switch (k) {
        case kernel_kind::k0: return "k0";
        case kernel_kind::left: return "left";
        case kernel_kind::right: return "right";
        case kernel_kind::plus: return "plus";
        case kernel_kind::minus: return "minus";
        case kernel_kind::full: return "full";
        case kernel_kind::half_line: return "half-line";
        case kernel_kind::bergman_sector: return "bergman-sector";
        case kernel_kind::hardy_pullback: return "hardy-pullback";
        case kernel_kind::bergman_halfplane: return "bergman-halfplane";
    }
    return "unknown";
}

inline kernel_kind kernel_from_string(const std::string& s) {
    if (s == "k0") return kernel_kind::k0;
    if (s == "left") return kernel_kind::left;
    if (s == "right") return kernel_kind::right;
    if (s == "plus") return kernel_kind::plus;
    if (s == "minus") return kernel_kind::minus;
    if (s == "full") return kernel_kind::full;
    if (s == "half-line") return kernel_kind::half_line;
    if (s == "bergman-sector") return kernel_kind::bergman_sector;
    if (s == "hardy-pullback") return kernel_kind::hardy_pullback;
    if (s == "bergman-halfplane") return kernel_kind::bergman_halfplane;
    throw domain_error("unknown kernel kind: " + s);
}

// Admissible evaluation domain of each kernel's arguments.
inline region_kind kernel_domain(kernel_kind k) {
    switch (k) {
        case kernel_kind::k0:
        case kernel_kind::half_line:
        case kernel_kind::bergman_sector:
        case kernel_kind::hardy_pullback:
            return region_kind::sector;
        case kernel_kind::bergman_halfplane:
            return region_kind::half_plane;
        case kernel_kind::left:
            return region_kind::square_d;
        case kernel_kind::right:
            return region_kind::shifted_d;
        case kernel_kind::plus:
        case kernel_kind::minus:
        case kernel_kind::full:
            return region_kind::square_q;
    }
    return region_kind::sector;
}

struct kernel_spec {
    kernel_kind kind = kernel_kind::left;
    double T = 1.0;                  // ignored by the three time-free pullback kernels
    truncation_policy truncation{};  // used by the series kinds

    void validate() const {
        detail::require_time(T, "kernel_spec");
        truncation.validate();
    }
};

// Membership margin required of every kernel argument; boundary evaluation
// is out of scope because the denominators degenerate there.
inline constexpr double kernel_margin = 1e-6;

namespace detail {

inline constexpr double pole_guard = 1e-12;

// K0 building block without membership checks; the series evaluators feed
// it lattice-shifted arguments that leave the sector but keep Re(zeta) >= 0.
inline cplx k0_term(cplx z, cplx w, double T) {
    const cplx zeta = z * z + std::conj(w) * std::conj(w);
    if (std::abs(zeta) < pole_guard) {
        throw pole_proximity("eval_K0: |z^2 + conj(w)^2| < 1e-12");
    }
    const cplx e = exp_split(-zeta.real() / (4.0 * T), -zeta.imag() / (4.0 * T));
    const cplx zw = z * std::conj(w);
    return (zw / pi) * e * (1.0 / (zeta * zeta) + 1.0 / (4.0 * T * zeta));
}

inline void require_member(kernel_kind kind, cplx p, const char* which) {
    if (!contains(kernel_domain(kind), p, kernel_margin)) {
        throw domain_error(std::string("eval_kernel(") + heatrk::to_string(kind) + "): " + which +
                           " = (" + std::to_string(p.real()) + ", " + std::to_string(p.imag()) +
                           ") is outside " + heatrk::to_string(kernel_domain(kind)) +
                           " at margin 1e-6");
    }
}

// Partial double series sum_{max(|n|,|m|) <= N} K0(z + step*n, w + step*m; T),
// summed shell by shell with compensation.
inline cplx series_window(cplx z, cplx w, double T, double step, int N) {
    kahan_sum<cplx> acc;
    for (int shell = 0; shell <= N; ++shell) {
        for (int n = -shell; n <= shell; ++n) {
            for (int m = -shell; m <= shell; ++m) {
                if (std::max(std::abs(n), std::abs(m)) != shell) continue;
                acc.add(k0_term(z + step * n, w + step * m, T));
            }
        }
    }
    return acc.value();
}

}  // namespace detail

// Closed-form building block K0(z,w;T) on the sector.
inline cplx eval_K0(cplx z, cplx w, double T) {
    detail::require_time(T, "eval_K0");
    if (!contains(region_kind::sector, z, kernel_margin) ||
        !contains(region_kind::sector, w, kernel_margin)) {
        throw domain_error("eval_K0: arguments must lie in the open sector (margin 1e-6)");
    }
    return detail::k0_term(z, w, T);
}

// Certified bound on the double-series tail sum_{max(|n|,|m|) > N} |K0 term|
// for arguments in the closed fundamental cell (D-bar when step = 2, Q-bar
// when step = 1) and N >= 2.
//
// Shell K carries 8K lattice points, of which at least one index has
// absolute value K, so with m = K-1 >= 1:
//   |z + step*n| <= step*K + |z|_max,
//   Re(zeta)     >= step^2 m^2 - 1      (step 2; >= m^2 - 1/4 for step 1),
//   |zeta|       >= Re(zeta)            (and Re(zeta) >= 0 for every shift).
// The shell bound B(K) collects these; the tail closes geometrically with a
// certified ratio rho < 1/2 (returns +inf when the ratio test fails, which
// simply forces a larger window).
inline double series_tail_bound(double T, double step, int N) {
    detail::require_time(T, "series_tail_bound");
    if (step != 1.0 && step != 2.0) throw domain_error("series_tail_bound: step must be 1 or 2");
    if (N < 2) throw domain_error("series_tail_bound: N must be >= 2");
    const auto shell_bound = [&](int K) {
        const double m = K - 1.0;
        const double zmax = (step == 2.0) ? 2.25 : 1.25;  // >= sup |z| over the cell
        const double amp = 8.0 * K * std::pow(step * K + zmax, 2) / pi;
        const double slack = (step == 2.0) ? std::exp(1.0 / (4.0 * T)) : std::exp(1.0 / (16.0 * T));
        const double decay = std::exp(-step * step * m * m / (4.0 * T));
        // |zeta| >= c2 * m^2 once the -1 (resp. -1/4) defect is absorbed
        const double c2 = (step == 2.0) ? 3.0 : 0.75;
        const double bracket = 1.0 / (c2 * c2 * m * m * m * m) + 1.0 / (4.0 * T * c2 * m * m);
        return amp * slack * decay * bracket;
    };
    const double rho = 2.1 * std::exp(-step * step * (2.0 * N + 1.0) / (4.0 * T));
    if (!(rho < 0.5)) return HUGE_VAL;
    const double bound = shell_bound(N + 1) / (1.0 - rho);
    return std::isfinite(bound) && bound > DBL_MIN ? bound : DBL_MIN;
}

// Half-width whose certified double-series tail is below policy.tol.
inline int series_cutoff(double T, double step, const truncation_policy& policy) {
    policy.validate();
    detail::require_time(T, "series_cutoff");
    int n = std::min(detail::cutoff_seed(T, policy.tol) + 1, policy.max_half_width);
    n = std::max(3, n);
    while (series_tail_bound(T, step, n) >= policy.tol) {
        if (n >= policy.max_half_width) {
            throw truncation_failure(
                "series_cutoff: certified tail stays above tol at max_half_width " +
                std::to_string(policy.max_half_width) + " (T = " + std::to_string(T) + ")");
        }
        n = std::min(n + std::max(2, n / 4), policy.max_half_width);
    }
    return n;
}

// Kernel evaluation at a fixed series half-width (no certification); closed
// forms ignore the window. Used by truncation-stability checks.
inline cplx eval_kernel_window(const kernel_spec& spec, cplx z, cplx w, int half_width) {
    spec.validate();
    detail::require_member(spec.kind, z, "z");
    detail::require_member(spec.kind, w, "w");
    const double T = spec.T;
    switch (spec.kind) {
        case kernel_kind::left:
            return detail::series_window(z, w, T, 2.0, half_width);
        case kernel_kind::right:
            return detail::series_window(z + 1.0, w + 1.0, T, 2.0, half_width);
        case kernel_kind::plus:
            return detail::series_window(z, w, T, 1.0, half_width);
        case kernel_kind::minus:
            // signed four-term regrouping of the period-1 alternating series
            return detail::series_window(z, w, T, 2.0, half_width) +
                   detail::series_window(z + 1.0, w + 1.0, T, 2.0, half_width) -
                   detail::series_window(z + 1.0, w, T, 2.0, half_width) -
                   detail::series_window(z, w + 1.0, T, 2.0, half_width);
        case kernel_kind::full:
            return detail::series_window(z, w, T, 2.0, half_width) +
                   detail::series_window(z + 1.0, w + 1.0, T, 2.0, half_width);
        case kernel_kind::k0:
            return detail::k0_term(z, w, T);
        case kernel_kind::half_line: {
            const cplx zeta = z * z + std::conj(w) * std::conj(w);
            if (std::abs(zeta) < detail::pole_guard) {
                throw pole_proximity("eval_kernel(half-line): |z^2 + conj(w)^2| < 1e-12");
            }
            const cplx zw = z * std::conj(w);
            const cplx e = detail::exp_split(-(z * z).real() / (4.0 * T), -(z * z).imag() / (4.0 * T)) *
                           detail::exp_split(-(std::conj(w) * std::conj(w)).real() / (4.0 * T),
                                             -(std::conj(w) * std::conj(w)).imag() / (4.0 * T));
            return (1.0 / (4.0 * pi)) * e * (4.0 * zw / (zeta * zeta) + zw / (T * zeta));
        }
        case kernel_kind::bergman_sector: {
            const cplx zeta = z * z + std::conj(w) * std::conj(w);
            if (std::abs(zeta) < detail::pole_guard) {
                throw pole_proximity("eval_kernel(bergman-sector): |z^2 + conj(w)^2| < 1e-12");
            }
            return 4.0 * z * std::conj(w) / (zeta * zeta);
        }
        case kernel_kind::hardy_pullback: {
            const cplx zeta = z * z + std::conj(w) * std::conj(w);
            if (std::abs(zeta) < detail::pole_guard) {
                throw pole_proximity("eval_kernel(hardy-pullback): |z^2 + conj(w)^2| < 1e-12");
            }
            return 1.0 / zeta;
        }
        case kernel_kind::bergman_halfplane: {
            const cplx s = z + std::conj(w);
            if (std::abs(s) < detail::pole_guard) {
                throw pole_proximity("eval_kernel(bergman-halfplane): |z + conj(w)| < 1e-12");
            }
            return 1.0 / (s * s);
        }
    }
    throw domain_error("eval_kernel: unknown kernel kind");
}

// Kernel evaluation with certified series truncation per spec.truncation.
inline cplx eval_kernel(const kernel_spec& spec, cplx z, cplx w) {
    spec.validate();
    switch (spec.kind) {
        case kernel_kind::left:
        case kernel_kind::right:
        case kernel_kind::minus:
        case kernel_kind::full:
            return eval_kernel_window(spec, z, w, series_cutoff(spec.T, 2.0, spec.truncation));
        case kernel_kind::plus:
            return eval_kernel_window(spec, z, w, series_cutoff(spec.T, 1.0, spec.truncation));
        default:
            return eval_kernel_window(spec, z, w, 0);
    }
}

struct gram_matrix {
    kernel_spec spec;
    std::vector<cplx> points;
    Eigen::MatrixXcd entries;
};

// Hermitian Gram matrix over a point list: the upper triangle is evaluated,
// the lower mirrored, and diagonal imaginary parts (at most tail-tolerance
// sized) are forced to zero. Distinctness of the points is the caller's
// concern; duplicates merely make the matrix singular, which psd_check and
// the regularized solver both tolerate.
inline gram_matrix gram(const kernel_spec& spec, const std::vector<cplx>& points,
                        unsigned threads = 1) {
    spec.validate();
    const auto n = static_cast<Eigen::Index>(points.size());
    if (n == 0) throw domain_error("gram: needs at least one point");
    gram_matrix g{spec, points, Eigen::MatrixXcd(n, n)};
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t row) {
        const auto i = static_cast<Eigen::Index>(row);
        for (Eigen::Index j = i; j < n; ++j) {
            cplx v;
            try {
                v = eval_kernel(spec, points[i], points[j]);
            } catch (const domain_error& e) {
                throw domain_error("gram entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                   "): " + e.what());
            } catch (const truncation_failure& e) {
                throw truncation_failure("gram entry (" + std::to_string(i) + ", " +
                                         std::to_string(j) + "): " + e.what());
            } catch (const pole_proximity& e) {
                throw pole_proximity("gram entry (" + std::to_string(i) + ", " +
                                     std::to_string(j) + "): " + e.what());
            }
            if (i == j) v = cplx{v.real(), 0.0};
            g.entries(i, j) = v;
            g.entries(j, i) = std::conj(v);
        }
    });
    return g;
}

struct psd_report {
    double min_eigenvalue = 0.0;
    bool passes = false;
};

// Passes iff lambda_min >= -rel_tol * trace; the natural scale-free test for
// a numerically positive semidefinite Gram.
inline psd_report psd_check(const gram_matrix& g, double rel_tol) {
    if (!(rel_tol >= 0.0)) throw domain_error("psd_check: rel_tol must be >= 0");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g.entries, Eigen::EigenvaluesOnly);
    const double lambda_min = es.eigenvalues().minCoeff();
    const double tr = g.entries.trace().real();
    return {lambda_min, lambda_min >= -rel_tol * tr};
}

}  // namespace heatrk
