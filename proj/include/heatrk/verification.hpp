#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "heatrk/common.hpp"
#include "heatrk/control.hpp"
#include "heatrk/geometry.hpp"
#include "heatrk/heat_series.hpp"
#include "heatrk/io.hpp"
#include "heatrk/kernels.hpp"
#include "heatrk/quadrature.hpp"

namespace heatrk {

struct check_result {
    std::string name;
    double defect = 0.0;     // measured worst-case deviation
    double threshold = 0.0;  // pass iff defect <= threshold
    bool pass = false;
};

namespace detail {

inline check_result make_check(std::string name, double defect, double threshold) {
    check_result r{std::move(name), defect, threshold, defect <= threshold};
    return r;
}

inline double rel_diff(cplx a, cplx b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

}  // namespace detail

// Runs the full cross-module invariant suite at horizon T. Every check is a
// mathematical identity or a certified-bound property of the implementation;
// on a healthy build all of them pass for any moderate T.
inline std::vector<check_result> invariant_suite(double T, std::uint64_t seed) {
    detail::require_time(T, "invariant_suite");
    std::vector<check_result> out;
    const truncation_policy pol{};
    const double tol = pol.tol;

    // --- geometry ---
    {
        const auto pts = sample_points(region_kind::square_d, 50, 1e-3, seed);
        int bad = 0;
        for (const cplx& p : pts) {
            if (contains(region_kind::square_d, p, 0.2) &&
                !contains(region_kind::square_d, p, 0.05)) {
                ++bad;
            }
            const cplx ip{-p.imag(), p.real()};
            if (contains(region_kind::square_d, ip, 0.0)) ++bad;
            if (contains(region_kind::square_d, -ip, 0.0)) ++bad;
            for (int k = -3; k <= 3; ++k) {
                if (!contains(region_kind::periodized_d, p + 2.0 * k, 0.0)) ++bad;
            }
        }
        out.push_back(detail::make_check("geometry-membership", bad, 0.0));

        const auto again = sample_points(region_kind::square_d, 50, 1e-3, seed);
        double dmax = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) dmax = std::max(dmax, std::abs(pts[i] - again[i]));
        out.push_back(detail::make_check("sampling-deterministic", dmax, 0.0));
    }

    // --- heat series ---
    {
        const auto zs = sample_points(region_kind::square_d, 20, 0.02, seed + 1);
        double odd = 0.0;
        for (const cplx& z : zs) odd = std::max(odd, std::abs(eval_dxK(z, T) + eval_dxK(-z, T)));
        out.push_back(detail::make_check("dxk-oddness", odd, 0.0));

        const double frozen = -0.10984782236693061;  // -e^{-1/4} / (4 sqrt(pi))
        out.push_back(detail::make_check(
            "dxk-frozen-value", std::abs(eval_dxK({1.0, 0.0}, 1.0) - frozen), 1e-15));

        double per2 = 0.0, odd2 = 0.0, per1 = 0.0, odd1 = 0.0;
        for (const cplx& z : zs) {
            const cplx f = eval_dxtheta(z, T, period::two, pol);
            per2 = std::max(per2, std::abs(eval_dxtheta(z + 2.0, T, period::two, pol) - f));
            odd2 = std::max(odd2, std::abs(eval_dxtheta(-z, T, period::two, pol) + f));
        }
        const auto qs = sample_points(region_kind::square_q, 20, 0.02, seed + 2);
        for (const cplx& z : qs) {
            const cplx f = eval_dxtheta(z, T, period::one, pol);
            per1 = std::max(per1, std::abs(eval_dxtheta(z + 1.0, T, period::one, pol) - f));
            odd1 = std::max(odd1, std::abs(eval_dxtheta(-z, T, period::one, pol) + f));
        }
        out.push_back(detail::make_check("dxtheta-periodicity", std::max(per2, per1), 2.0 * tol));
        out.push_back(detail::make_check("dxtheta-oddness", std::max(odd2, odd1), 2.0 * tol));

        double zero2 = 0.0, zero1 = 0.0;
        for (double t : {0.1, 0.5, 1.0, 2.0}) {
            zero2 = std::max(zero2, std::abs(eval_dxtheta({1.0, 0.0}, t, period::two, pol)));
            zero1 = std::max(zero1, std::abs(eval_dxtheta({0.5, 0.0}, t, period::one, pol)));
        }
        out.push_back(detail::make_check("dxtheta-oddness-zero", std::max(zero2, zero1), tol));

        double dbl = 0.0;
        for (const cplx& z : zs) {
            const int n = dxtheta_cutoff(T, period::two, pol);
            const cplx zc = detail::reduce_period_two(z);
            dbl = std::max(dbl, std::abs(eval_dxtheta_window(zc, T, period::two, n) -
                                         eval_dxtheta_window(zc, T, period::two, 2 * n)));
        }
        out.push_back(detail::make_check("dxtheta-window-doubling", dbl, tol));

        double mono = 0.0;
        for (int n = 3; n <= 12; ++n) {
            const double b1 = certified_tail_bound({1.0, 0.0}, T, period::two, n - 1);
            const double b2 = certified_tail_bound({1.0, 0.0}, T, period::two, n);
            mono = std::max(mono, b2 - b1);
        }
        out.push_back(detail::make_check("tail-bound-monotone", mono, 0.0));

        double certified = 0.0;
        for (const cplx& z : zs) {
            const cplx zc = detail::reduce_period_two(z);
            const cplx full = eval_dxtheta_window(zc, 0.5, period::two, 400);
            for (int n : {3, 5, 8}) {
                const double miss = std::abs(full - eval_dxtheta_window(zc, 0.5, period::two, n));
                certified = std::max(certified,
                                     miss - certified_tail_bound(zc, 0.5, period::two, n));
            }
        }
        out.push_back(detail::make_check("tail-bound-certifies", certified, 0.0));

        double agree = 0.0;
        for (double t : {0.005, 0.01}) {
            agree = std::max(agree, std::abs(eval_dxtheta({0.3, 0.0}, t, period::two, pol) -
                                             eval_dxK({0.3, 0.0}, t)));
        }
        out.push_back(detail::make_check("dxtheta-single-term-regime", agree, 1e-13));
    }

    // --- kernels: closed forms ---
    {
        const auto zs = sample_points(region_kind::sector, 50, 0.05, seed + 3);
        const auto ws = sample_points(region_kind::sector, 50, 0.05, seed + 4);

        double herm = 0.0;
        for (std::size_t i = 0; i < zs.size(); ++i) {
            herm = std::max(herm, detail::rel_diff(eval_K0(ws[i], zs[i], T),
                                                   std::conj(eval_K0(zs[i], ws[i], T))));
        }
        out.push_back(detail::make_check("k0-hermitian", herm, 1e-14));

        const double frozen = 0.07239926447254043;  // 3 e^{-1/2} / (8 pi)
        out.push_back(detail::make_check(
            "k0-frozen-value", std::abs(eval_K0({1.0, 0.0}, {1.0, 0.0}, 1.0) - frozen), 1e-15));

        double integ = 0.0;
        for (std::size_t i = 0; i < 10; ++i) {
            const cplx z = zs[i], w = ws[i];
            const cplx zeta = z * z + std::conj(w) * std::conj(w);
            const cplx pref = z * std::conj(w) / (16.0 * pi);
            const auto f = [&](double s) { return pref * std::exp(-zeta / (4.0 * s)) / (s * s * s); };
            const cplx closed = eval_K0(z, w, T);
            const cplx quad = integrate(f, 0.0, T, std::max(1e-15, 1e-11 * std::abs(closed)));
            integ = std::max(integ, std::abs(quad - closed) / std::abs(closed));
        }
        out.push_back(detail::make_check("k0-integral-identity", integ, 1e-8));

        const kernel_spec kq{kernel_kind::half_line, T, pol};
        double same = 0.0;
        for (std::size_t i = 0; i < zs.size(); ++i) {
            same = std::max(same, detail::rel_diff(eval_kernel(kq, zs[i], ws[i]),
                                                   eval_K0(zs[i], ws[i], T)));
        }
        out.push_back(detail::make_check("halfline-equals-k0", same, 1e-12));

        double scaling = 0.0;
        for (double Ts : {0.3, 2.0, 7.0}) {
            const kernel_spec big{kernel_kind::half_line, Ts, pol};
            const kernel_spec unit{kernel_kind::half_line, 1.0, pol};
            const double rs = std::sqrt(Ts);
            for (std::size_t i = 0; i < 10; ++i) {
                const cplx lhs = Ts * eval_kernel(big, zs[i], ws[i]);
                const cplx rhs = eval_kernel(unit, zs[i] / rs, ws[i] / rs);
                scaling = std::max(scaling, detail::rel_diff(lhs, rhs));
            }
        }
        out.push_back(detail::make_check("halfline-scaling", scaling, 1e-12));

        const kernel_spec k1{kernel_kind::bergman_sector, 1.0, pol};
        const kernel_spec kb{kernel_kind::bergman_halfplane, 1.0, pol};
        double pull = 0.0;
        for (std::size_t i = 0; i < 30; ++i) {
            const cplx z = zs[i], w = ws[i];
            const cplx lhs = eval_kernel(k1, z, w);
            const cplx rhs =
                eval_kernel(kb, z * z, w * w) * (2.0 * z) * std::conj(2.0 * w);
            pull = std::max(pull, detail::rel_diff(lhs, rhs));
        }
        out.push_back(detail::make_check("bergman-pullback", pull, 1e-14));
    }

    // --- kernels: series ---
    {
        const auto zq = sample_points(region_kind::square_q, 20, 0.05, seed + 5);
        const auto wq = sample_points(region_kind::square_q, 20, 0.05, seed + 6);
        const kernel_spec leftk{kernel_kind::left, T, pol};
        const kernel_spec plusk{kernel_kind::plus, T, pol};
        const kernel_spec minusk{kernel_kind::minus, T, pol};
        const kernel_spec fullk{kernel_kind::full, T, pol};

        double herm = 0.0;
        for (kernel_kind kind : {kernel_kind::left, kernel_kind::right, kernel_kind::plus,
                                 kernel_kind::minus, kernel_kind::full, kernel_kind::k0,
                                 kernel_kind::half_line, kernel_kind::bergman_sector,
                                 kernel_kind::hardy_pullback, kernel_kind::bergman_halfplane}) {
            const kernel_spec spec{kind, T, pol};
            const auto zs = sample_points(kernel_domain(kind), 10, 0.05, seed + 7);
            const auto ws = sample_points(kernel_domain(kind), 10, 0.05, seed + 8);
            for (std::size_t i = 0; i < zs.size(); ++i) {
                herm = std::max(herm, std::abs(eval_kernel(spec, ws[i], zs[i]) -
                                               std::conj(eval_kernel(spec, zs[i], ws[i]))));
            }
        }
        out.push_back(detail::make_check("kernel-hermitian", herm, 2.0 * tol));

        double four = 0.0, sum2 = 0.0;
        for (std::size_t i = 0; i < zq.size(); ++i) {
            const cplx z = zq[i], w = wq[i];
            const cplx combo = eval_kernel(leftk, z, w) + eval_kernel(leftk, z + 1.0, w + 1.0) +
                               eval_kernel(leftk, z + 1.0, w) + eval_kernel(leftk, z, w + 1.0);
            four = std::max(four, std::abs(eval_kernel(plusk, z, w) - combo));
            const cplx both = eval_kernel(plusk, z, w) + eval_kernel(minusk, z, w);
            sum2 = std::max(sum2, std::abs(both - 2.0 * eval_kernel(fullk, z, w)));
        }
        out.push_back(detail::make_check("plus-four-term-identity", four, 1e-10));
        out.push_back(detail::make_check("plus-minus-full-identity", sum2, 1e-9));

        double dbl = 0.0;
        for (kernel_kind kind : {kernel_kind::left, kernel_kind::right, kernel_kind::plus,
                                 kernel_kind::minus, kernel_kind::full}) {
            const kernel_spec spec{kind, T, pol};
            const double step = (kind == kernel_kind::plus) ? 1.0 : 2.0;
            const int n = series_cutoff(T, step, pol);
            const auto zs = sample_points(kernel_domain(kind), 4, 0.05, seed + 9);
            const auto ws = sample_points(kernel_domain(kind), 4, 0.05, seed + 10);
            for (std::size_t i = 0; i < zs.size(); ++i) {
                dbl = std::max(dbl, std::abs(eval_kernel_window(spec, zs[i], ws[i], n) -
                                             eval_kernel_window(spec, zs[i], ws[i], 2 * n)));
            }
        }
        out.push_back(detail::make_check("series-window-doubling", dbl, tol));

        double psd = 0.0;
        for (kernel_kind kind : {kernel_kind::left, kernel_kind::plus, kernel_kind::half_line}) {
            const kernel_spec spec{kind, T, pol};
            const auto pts = sample_points(kernel_domain(kind), 10, 0.15, seed + 11);
            const auto rep = psd_check(gram(spec, pts), 1e-10);
            const double tr = gram(spec, pts).entries.trace().real();
            psd = std::max(psd, std::max(0.0, -rep.min_eigenvalue / tr));
        }
        out.push_back(detail::make_check("gram-psd", psd, 1e-10));

        auto pts = sample_points(region_kind::square_q, 8, 0.15, seed + 12);
        pts.push_back(pts.front());  // deliberate duplicate: still PSD
        const auto rep = psd_check(gram(plusk, pts), 1e-10);
        out.push_back(detail::make_check(
            "gram-duplicate-psd",
            std::max(0.0, -rep.min_eigenvalue / gram(plusk, pts).entries.trace().real()),
            1e-10));

        auto perm = pts;
        std::reverse(perm.begin(), perm.end());
        const auto g1 = gram(plusk, pts);
        const auto g2 = gram(plusk, perm);
        double pdiff = 0.0;
        const auto n = static_cast<Eigen::Index>(pts.size());
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                pdiff = std::max(pdiff,
                                 std::abs(g1.entries(i, j) - g2.entries(n - 1 - i, n - 1 - j)));
            }
        }
        out.push_back(detail::make_check("gram-permutation", pdiff, 2.0 * tol));
    }

    // --- control ---
    {
        const std::size_t M = 2048;
        double cons = 0.0;
        for (scenario sc : {scenario::left_only, scenario::right_only, scenario::anti_sym,
                            scenario::sym, scenario::both, scenario::half_line}) {
            const auto pts = sample_points(scenario_domain(sc), 4, 0.2, seed + 13);
            const kernel_spec spec{scenario_kernel(sc), T, pol};
            const auto h = [&](scenario fsc, cplx z, double t) { return feature(fsc, z, T, t, pol); };
            for (std::size_t i = 0; i < pts.size(); ++i) {
                for (std::size_t j = i; j < pts.size(); ++j) {
                    kahan_sum<cplx> acc;
                    for (std::size_t k = 0; k < M; ++k) {
                        const double t = (static_cast<double>(k) + 0.5) * T / M;
                        if (sc == scenario::both) {
                            acc.add(h(scenario::left_only, pts[j], t) *
                                    std::conj(h(scenario::left_only, pts[i], t)));
                            acc.add(h(scenario::right_only, pts[j], t) *
                                    std::conj(h(scenario::right_only, pts[i], t)));
                        } else {
                            acc.add(h(sc, pts[j], t) * std::conj(h(sc, pts[i], t)));
                        }
                    }
                    const cplx quad = (T / static_cast<double>(M)) * acc.value();
                    cons = std::max(cons, std::abs(quad - eval_kernel(spec, pts[i], pts[j])));
                }
            }
        }
        out.push_back(detail::make_check("feature-kernel-consistency", cons, 1e-6));
    }
    {
        control_signal u1 = control_signal::zeros(T, 64);
        control_signal u2 = control_signal::zeros(T, 64);
        for (std::size_t k = 0; k < 64; ++k) {
            const double t = u1.t_at(k);
            u1.samples[k] = {std::sin(pi * t / T), 0.1 * t / T};
            u2.samples[k] = {t / T * (1.0 - t / T), std::cos(2.0 * pi * t / T)};
        }
        const cplx a{0.7, -0.3}, b{-1.1, 0.4};
        control_signal mix = control_signal::zeros(T, 64);
        for (std::size_t k = 0; k < 64; ++k) mix.samples[k] = a * u1.samples[k] + b * u2.samples[k];
        const auto pts = sample_points(region_kind::square_q, 4, 0.1, seed + 14);
        const auto w1 = apply_operator(scenario::left_only, u1, std::nullopt, pts, pol);
        const auto w2 = apply_operator(scenario::left_only, u2, std::nullopt, pts, pol);
        const auto wm = apply_operator(scenario::left_only, mix, std::nullopt, pts, pol);
        double lin = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            lin = std::max(lin, std::abs(wm.values[i] - a * w1.values[i] - b * w2.values[i]));
        }
        out.push_back(detail::make_check("operator-linearity", lin, 1e-12));

        control_signal neg = u1;
        for (cplx& v : neg.samples) v = -v;
        const auto wboth_s = apply_operator(scenario::both, u1, u1, pts, pol);
        const auto wsym = apply_operator(scenario::sym, u1, std::nullopt, pts, pol);
        const auto wboth_a = apply_operator(scenario::both, u1, neg, pts, pol);
        const auto wanti = apply_operator(scenario::anti_sym, u1, std::nullopt, pts, pol);
        double alg = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            alg = std::max(alg, std::abs(wboth_s.values[i] - wsym.values[i]));
            alg = std::max(alg, std::abs(wboth_a.values[i] - wanti.values[i]));
        }
        out.push_back(detail::make_check("scenario-algebra", alg, 1e-10));

        control_signal ul = control_signal::zeros(T, 512);
        for (std::size_t k = 0; k < 512; ++k) ul.samples[k] = std::sin(pi * ul.t_at(k) / T);
        const control_signal ur = control_signal::zeros(T, 512);
        const std::vector<double> xs{0.15, 0.35, 0.5, 0.65, 0.85};
        std::vector<cplx> zs;
        for (double x : xs) zs.emplace_back(x, 0.0);
        const auto wop = apply_operator(scenario::both, ul, ur, zs, pol);
        const auto wfd = fd_oracle(ul, ur, 400, std::max(4000, 10 * 400), xs);
        double fddiff = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            fddiff = std::max(fddiff, std::abs(wop.values[i] - wfd.values[i]));
        }
        out.push_back(detail::make_check("fd-cross-check", fddiff, 1e-4));
    }

    // --- synthesis ---
    {
        const std::vector<cplx> pts{{0.2, 0.0}, {0.35, 0.0}, {0.5, 0.0}, {0.65, 0.0}, {0.8, 0.0}};
        state_field zero{pts, std::vector<cplx>(pts.size(), cplx{0.0, 0.0}), T};
        const auto rz = min_norm_control(scenario::left_only, zero, std::nullopt, 64, pol);
        double zdef = rz.residual + rz.norm_estimate;
        for (const cplx& c : rz.coefficients) zdef += std::abs(c);
        for (const cplx& v : rz.control.samples) zdef += std::abs(v);
        out.push_back(detail::make_check("synthesis-zero-target", zdef, 0.0));

        control_signal ustar = control_signal::zeros(T, 2048);
        for (std::size_t k = 0; k < ustar.size(); ++k) {
            const double s = ustar.t_at(k) / T;
            ustar.samples[k] = s * s * (1.0 - s);
        }
        std::vector<cplx> cps;
        for (int i = 0; i < 8; ++i) cps.emplace_back(0.1 + 0.8 * i / 7.0, 0.0);
        const auto target = apply_operator(scenario::left_only, ustar, std::nullopt, cps, pol);
        const auto syn = min_norm_control(scenario::left_only, target, std::nullopt, 2048, pol);
        double tmax = 0.0;
        for (const cplx& v : target.values) tmax = std::max(tmax, std::abs(v));
        out.push_back(detail::make_check("synthesis-roundtrip-residual",
                                         syn.residual / tmax, 1e-2));
        out.push_back(detail::make_check(
            "synthesis-min-norm",
            std::max(0.0, syn.control.l2_norm() / ustar.l2_norm() - 1.0), 5e-2));

        const cplx y0{0.6, 0.0};
        const kernel_spec leftk{kernel_kind::left, T, pol};
        std::vector<cplx> rp;
        for (int i = 0; i < 12; ++i) rp.emplace_back(0.2 + 0.8 * i / 11.0, 0.0);
        state_field section{rp, {}, T};
        for (const cplx& p : rp) section.values.push_back(eval_kernel(leftk, p, y0));
        const auto rs = min_norm_control(scenario::left_only, section, std::nullopt, 64, pol);
        const double kyy = eval_kernel(leftk, y0, y0).real();
        out.push_back(detail::make_check(
            "kernel-section-reproducing",
            std::abs(rs.norm_estimate * rs.norm_estimate - kyy) / kyy, 5e-2));

        std::vector<cplx> fitp = rp;
        const std::vector<cplx> probe{{0.45, 0.0}, {0.62, 0.0}, {0.77, 0.0}};
        state_field memb{fitp, section.values, T};
        for (const cplx& p : probe) {
            memb.points.push_back(p);
            memb.values.push_back(eval_kernel(leftk, p, y0));
        }
        const double r0 = membership_residual(scenario::left_only, memb, probe, 1e-10, pol);
        out.push_back(detail::make_check("membership-kernel-section", r0, 1e-6));

        const double r1 = membership_residual(scenario::left_only, memb, probe, 1e-6, pol);
        const double r2 = membership_residual(scenario::left_only, memb, probe, 1e-2, pol);
        const double viol = std::max(std::max(r0 - r1, r1 - r2), 0.0);
        out.push_back(detail::make_check("membership-lambda-monotone", viol, 1e-12));
    }

    // --- half-line synthesis scaling ---
    {
        const double Ts = 2.5;
        const double rs = std::sqrt(Ts);
        const std::vector<cplx> unit_pts{{0.3, 0.02}, {0.5, -0.05}, {0.7, 0.1}, {0.9, 0.0}};
        std::vector<cplx> big_pts;
        for (const cplx& p : unit_pts) big_pts.push_back(rs * p);
        const kernel_spec kq{kernel_kind::half_line, 1.0, pol};
        std::vector<cplx> vals;
        for (const cplx& p : unit_pts) vals.push_back(eval_kernel(kq, p, {0.6, 0.0}));
        const double lamT = 1e-12;
        const auto sol1 =
            min_norm_control(scenario::half_line, {unit_pts, vals, 1.0}, Ts * lamT, 256, pol);
        const auto solT =
            min_norm_control(scenario::half_line, {big_pts, vals, Ts}, lamT, 256, pol);
        double scale = 0.0, umax = 0.0;
        for (std::size_t k = 0; k < 256; ++k) umax = std::max(umax, std::abs(sol1.control.samples[k]));
        for (std::size_t k = 0; k < 256; ++k) {
            scale = std::max(scale,
                             std::abs(solT.control.samples[k] - sol1.control.samples[k]) / umax);
        }
        const double n1 = sol1.norm_estimate * sol1.norm_estimate;
        const double nT = solT.norm_estimate * solT.norm_estimate;
        scale = std::max(scale, std::abs(nT - Ts * n1) / (Ts * n1));
        out.push_back(detail::make_check("halfline-synthesis-scaling", scale, 1e-8));
    }

    // --- minimal-norm optimality under null-space perturbations ---
    {
        const std::vector<cplx> pts{{0.25, 0.0}, {0.4, 0.0}, {0.55, 0.0}, {0.7, 0.0},
                                    {0.85, 0.0}, {1.0, 0.0}};
        const kernel_spec leftk{kernel_kind::left, T, pol};
        state_field target{pts, {}, T};
        for (const cplx& p : pts) target.values.push_back(eval_kernel(leftk, p, {0.62, 0.0}));
        const std::size_t M = 256;
        const auto syn = min_norm_control(scenario::left_only, target, std::nullopt,
                                          static_cast<int>(M), pol);

        Eigen::MatrixXcd A(pts.size(), M);
        const double dt = T / static_cast<double>(M);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            for (std::size_t k = 0; k < M; ++k) {
                const double t = (static_cast<double>(k) + 0.5) * dt;
                A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                    -2.0 * dt * eval_dxtheta(pts[i], T - t, period::two, pol);
            }
        }
        Eigen::VectorXcd u(M);
        for (std::size_t k = 0; k < M; ++k) u(static_cast<Eigen::Index>(k)) = syn.control.samples[k];
        const Eigen::MatrixXcd AAh = A * A.adjoint();
        const Eigen::LLT<Eigen::MatrixXcd> llt(AAh);
        std::mt19937_64 rng(seed + 15);
        double defect = 0.0;
        const double base = u.norm();
        for (int trial = 0; trial < 20; ++trial) {
            Eigen::VectorXcd d(M);
            for (std::size_t k = 0; k < M; ++k) {
                d(static_cast<Eigen::Index>(k)) = cplx{detail::uniform01(rng) - 0.5,
                                                       detail::uniform01(rng) - 0.5};
            }
            const Eigen::VectorXcd proj = d - A.adjoint() * llt.solve(A * d);
            const double perturbed = (u + proj).norm();
            defect = std::max(defect, base - perturbed);
        }
        out.push_back(detail::make_check("min-norm-optimality", defect, 1e-9));
    }

    return out;
}

}  // namespace heatrk
