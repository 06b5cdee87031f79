// Command-line front end: evaluate kernels, assemble Gram matrices, apply the
// control-to-state operators, synthesize minimal-norm controls, and run the
// invariant suite. Exit codes: 0 success, 1 validation or input error, 2
// numerical failure (the message names the failing operation).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "heatrk/heatrk.hpp"

namespace {

using heatrk::cplx;
using ordered_json = nlohmann::ordered_json;

// User-input problem: maps to exit 1.
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

cplx parse_complex(const std::string& s) {
    try {
        const auto comma = s.find(',');
        if (comma == std::string::npos) {
            std::size_t used = 0;
            const double re = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return {re, 0.0};
        }
        const std::string a = s.substr(0, comma);
        const std::string b = s.substr(comma + 1);
        std::size_t ua = 0, ub = 0;
        const double re = std::stod(a, &ua);
        const double im = std::stod(b, &ub);
        if (ua != a.size() || ub != b.size()) throw std::invalid_argument(s);
        return {re, im};
    } catch (const std::exception&) {
        throw usage_error("cannot parse complex value '" + s + "' (expected re or re,im)");
    }
}

// Binds each long option both to a CLI11 flag and to a key of the JSON file
// given by --config. Flags given on the command line override config keys;
// unknown config keys are rejected.
class option_set {
  public:
    explicit option_set(CLI::App* cmd) : cmd_(cmd) {
        cmd_->add_option("--config", config_path_,
                         "JSON config file; explicit flags override its keys");
    }

    void add_double(const std::string& name, double& var, const std::string& desc) {
        register_entry(name, cmd_->add_option("--" + name, var, desc),
                       [&var, name](const ordered_json& v) {
                           if (!v.is_number()) {
                               throw usage_error("config key '" + name + "' must be a number");
                           }
                           var = v.get<double>();
                       });
    }

    void add_int(const std::string& name, int& var, const std::string& desc) {
        register_entry(name, cmd_->add_option("--" + name, var, desc),
                       [&var, name](const ordered_json& v) {
                           if (!v.is_number_integer()) {
                               throw usage_error("config key '" + name + "' must be an integer");
                           }
                           var = v.get<int>();
                       });
    }

    void add_unsigned(const std::string& name, unsigned& var, const std::string& desc) {
        register_entry(name, cmd_->add_option("--" + name, var, desc),
                       [&var, name](const ordered_json& v) {
                           if (!v.is_number_unsigned() && !v.is_number_integer()) {
                               throw usage_error("config key '" + name + "' must be an integer");
                           }
                           const auto x = v.get<long long>();
                           if (x < 0) throw usage_error("config key '" + name + "' must be >= 0");
                           var = static_cast<unsigned>(x);
                       });
    }

    void add_uint64(const std::string& name, std::uint64_t& var, const std::string& desc) {
        register_entry(name, cmd_->add_option("--" + name, var, desc),
                       [&var, name](const ordered_json& v) {
                           if (!v.is_number_integer() && !v.is_number_unsigned()) {
                               throw usage_error("config key '" + name + "' must be an integer");
                           }
                           var = v.get<std::uint64_t>();
                       });
    }

    void add_string(const std::string& name, std::string& var, const std::string& desc) {
        register_entry(name, cmd_->add_option("--" + name, var, desc),
                       [&var, name](const ordered_json& v) {
                           if (v.is_string()) {
                               var = v.get<std::string>();
                           } else if (v.is_number()) {
                               var = v.dump();  // numeric lambda etc.
                           } else {
                               throw usage_error("config key '" + name + "' must be a string");
                           }
                       });
    }

    void add_flag(const std::string& name, bool& var, const std::string& desc) {
        register_entry(name, cmd_->add_flag("--" + name, var, desc),
                       [&var, name](const ordered_json& v) {
                           if (!v.is_boolean()) {
                               throw usage_error("config key '" + name + "' must be a boolean");
                           }
                           var = v.get<bool>();
                       });
    }

    void add_complex_list(const std::string& name, std::vector<std::string>& var,
                          const std::string& desc) {
        register_entry(name, cmd_->add_option("--" + name, var, desc),
                       [&var, name](const ordered_json& v) {
                           var.clear();
                           if (v.is_string()) {
                               var.push_back(v.get<std::string>());
                           } else if (v.is_array()) {
                               for (const auto& e : v) {
                                   if (e.is_string()) {
                                       var.push_back(e.get<std::string>());
                                   } else if (e.is_number()) {
                                       var.push_back(e.dump());
                                   } else {
                                       throw usage_error("config key '" + name +
                                                         "' must hold strings");
                                   }
                               }
                           } else if (v.is_number()) {
                               var.push_back(v.dump());
                           } else {
                               throw usage_error("config key '" + name +
                                                 "' must be a string or an array of strings");
                           }
                       });
    }

    void require(const std::string& name) { required_.push_back(name); }

    // Call after CLI11 parsing: merge the config file, then enforce required
    // options (which may be satisfied by either source).
    void finalize() {
        if (!config_path_.empty()) {
            std::ifstream in(config_path_);
            if (!in) throw usage_error("cannot open config: " + config_path_);
            ordered_json cfg;
            try {
                cfg = ordered_json::parse(in);
            } catch (const std::exception& e) {
                throw usage_error("config parse error in " + config_path_ + ": " + e.what());
            }
            if (!cfg.is_object()) throw usage_error("config must be a JSON object");
            for (const auto& [key, val] : cfg.items()) {
                auto it = entries_.find(key);
                if (it == entries_.end()) {
                    throw usage_error("unknown config key '" + key + "' for command '" +
                                      cmd_->get_name() + "'");
                }
                if (it->second.opt->count() > 0) continue;
                it->second.set(val);
                it->second.from_config = true;
            }
        }
        for (const auto& name : required_) {
            const auto& e = entries_.at(name);
            if (e.opt->count() == 0 && !e.from_config) {
                throw usage_error("command '" + cmd_->get_name() + "' needs --" + name +
                                  " (flag or config key)");
            }
        }
    }

  private:
    struct entry {
        CLI::Option* opt = nullptr;
        std::function<void(const ordered_json&)> set;
        bool from_config = false;
    };

    void register_entry(const std::string& name, CLI::Option* opt,
                        std::function<void(const ordered_json&)> set) {
        entries_[name] = entry{opt, std::move(set), false};
    }

    CLI::App* cmd_;
    std::string config_path_;
    std::map<std::string, entry> entries_;
    std::vector<std::string> required_;
};

heatrk::truncation_policy make_policy(double tol) {
    heatrk::truncation_policy p;
    p.tol = tol;
    p.validate();
    return p;
}

// Real evaluation sites on (0,1); the domains' diagonal boundaries sit at
// Euclidean distance x/sqrt(2) from a real abscissa x, so honoring the
// requested margin needs an inset of margin*sqrt(2) (plus a strictness nudge).
std::vector<cplx> real_grid(int n, double margin) {
    if (n < 1) throw usage_error("--grid must be >= 1");
    if (!(margin >= 0.0) || margin >= 0.3) throw usage_error("--margin must lie in [0, 0.3)");
    const double a = std::max(margin * std::numbers::sqrt2 + 1e-9, 0.05);
    std::vector<cplx> pts;
    if (n == 1) {
        pts.emplace_back(0.5, 0.0);
        return pts;
    }
    for (int i = 0; i < n; ++i) {
        pts.emplace_back(a + (1.0 - 2.0 * a) * static_cast<double>(i) / (n - 1.0), 0.0);
    }
    return pts;
}

// Points CSV: column x, or columns re_z, im_z.
std::vector<cplx> read_points_csv(const std::string& path) {
    const auto t = heatrk::io::read_csv(path);
    const int cx = heatrk::io::column(t, "x");
    const int cre = heatrk::io::column(t, "re_z");
    const int cim = heatrk::io::column(t, "im_z");
    if (cx < 0 && (cre < 0 || cim < 0)) {
        throw usage_error(path + ": points CSV needs column x or columns re_z, im_z");
    }
    std::vector<cplx> pts;
    pts.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        pts.push_back(cx >= 0 ? cplx{row[static_cast<std::size_t>(cx)], 0.0}
                              : cplx{row[static_cast<std::size_t>(cre)],
                                     row[static_cast<std::size_t>(cim)]});
    }
    if (pts.empty()) throw usage_error(path + ": points CSV has no rows");
    return pts;
}

void write_json(const std::string& out_path, const ordered_json& j) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw usage_error("cannot open for writing: " + out_path);
    out << j.dump(2) << "\n";
    if (!out) throw usage_error("write failed: " + out_path);
}

void write_table(const std::string& out_path, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows) {
    if (out_path.empty()) {
        heatrk::io::write_csv(std::cout, header, rows);
    } else {
        heatrk::io::write_csv(out_path, header, rows);
    }
}

std::optional<double> parse_lambda(const std::string& s) {
    if (s == "auto") return std::nullopt;
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw usage_error("--lambda must be 'auto' or a number, got '" + s + "'");
    }
}

unsigned checked_threads(unsigned threads) {
    if (threads == 0) throw usage_error("--threads must be >= 1");
    return threads;
}

// ---------------------------------------------------------------- kernel-eval

struct kernel_eval_vars {
    std::string kind;
    double T = 1.0;
    double tol = 1e-12;
    std::vector<std::string> zs, ws;
    std::string out;
};

int run_kernel_eval(const kernel_eval_vars& v) {
    const heatrk::kernel_spec spec{heatrk::kernel_from_string(v.kind), v.T, make_policy(v.tol)};
    std::vector<cplx> zs, ws;
    for (const auto& s : v.zs) zs.push_back(parse_complex(s));
    for (const auto& s : v.ws) ws.push_back(parse_complex(s));
    if (zs.size() != ws.size()) {
        if (zs.size() == 1) zs.assign(ws.size(), zs.front());
        else if (ws.size() == 1) ws.assign(zs.size(), ws.front());
        else throw usage_error("--z and --w counts must match (or one must be single)");
    }
    std::vector<std::vector<double>> rows;
    rows.reserve(zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) {
        const cplx K = heatrk::eval_kernel(spec, zs[i], ws[i]);
        rows.push_back({zs[i].real(), zs[i].imag(), ws[i].real(), ws[i].imag(), K.real(),
                        K.imag()});
    }
    write_table(v.out, {"re_z", "im_z", "re_w", "im_w", "re_K", "im_K"}, rows);
    return 0;
}

// ----------------------------------------------------------------------- gram

struct gram_vars {
    std::string kind, points_path, out;
    double T = 1.0;
    double tol = 1e-12;
    double margin = 1e-6;
    int grid = 20;
    unsigned threads = 1;
};

int run_gram(const gram_vars& v) {
    const auto kind = heatrk::kernel_from_string(v.kind);
    const heatrk::kernel_spec spec{kind, v.T, make_policy(v.tol)};
    const auto pts = v.points_path.empty() ? real_grid(v.grid, v.margin)
                                           : read_points_csv(v.points_path);
    for (const auto& p : pts) {
        if (!heatrk::contains(heatrk::kernel_domain(kind), p, std::max(v.margin, 0.0))) {
            throw usage_error("gram: point (" + heatrk::io::fmt(p.real()) + ", " +
                              heatrk::io::fmt(p.imag()) + ") is outside " +
                              heatrk::to_string(heatrk::kernel_domain(kind)) +
                              " at the requested margin");
        }
    }
    const auto g = heatrk::gram(spec, pts, checked_threads(v.threads));
    const auto rep = heatrk::psd_check(g, 1e-10);

    ordered_json j;
    j["kind"] = v.kind;
    j["T"] = v.T;
    j["n"] = pts.size();
    auto points = ordered_json::array();
    for (const auto& p : pts) points.push_back({p.real(), p.imag()});
    j["points"] = points;
    auto entries = ordered_json::array();
    for (Eigen::Index i = 0; i < g.entries.rows(); ++i) {
        auto row = ordered_json::array();
        for (Eigen::Index k = 0; k < g.entries.cols(); ++k) {
            row.push_back({g.entries(i, k).real(), g.entries(i, k).imag()});
        }
        entries.push_back(row);
    }
    j["entries"] = entries;
    j["min_eigenvalue"] = rep.min_eigenvalue;
    j["psd_pass"] = rep.passes;
    write_json(v.out, j);
    return 0;
}

// ---------------------------------------------------------------------- solve

struct solve_vars {
    std::string scenario_name, control, control_right, out;
    double T = 1.0;
    double tol = 1e-12;
    double margin = 1e-6;
    int grid = 20;
    unsigned threads = 1;
    bool oracle = false;
};

int run_solve(const solve_vars& v) {
    const auto sc = heatrk::scenario_from_string(v.scenario_name);
    const auto pol = make_policy(v.tol);
    const auto u = heatrk::io::read_control_csv(v.control, v.T);
    std::optional<heatrk::control_signal> ur;
    if (sc == heatrk::scenario::both) {
        if (v.control_right.empty()) {
            throw usage_error("solve: scenario both needs --control-right");
        }
        ur = heatrk::io::read_control_csv(v.control_right, v.T);
    } else if (!v.control_right.empty()) {
        throw usage_error("solve: --control-right applies to scenario both only");
    }

    const auto pts = real_grid(v.grid, v.margin);
    const auto field =
        heatrk::apply_operator(sc, u, ur, pts, pol, checked_threads(v.threads));

    if (!v.oracle) {
        if (v.out.empty()) {
            heatrk::io::write_field_csv(std::cout, field);
        } else {
            heatrk::io::write_field_csv(v.out, field);
        }
        return 0;
    }

    if (sc == heatrk::scenario::half_line) {
        throw usage_error("solve: --oracle needs the finite rod; half-line has no FD reference");
    }
    const auto zero = heatrk::control_signal::zeros(u.T, u.size());
    heatrk::control_signal neg = u;
    for (cplx& s : neg.samples) s = -s;
    heatrk::control_signal fd_left = u, fd_right = zero;
    switch (sc) {
        case heatrk::scenario::left_only: break;
        case heatrk::scenario::right_only: fd_left = zero; fd_right = u; break;
        case heatrk::scenario::anti_sym: fd_right = neg; break;
        case heatrk::scenario::sym: fd_right = u; break;
        case heatrk::scenario::both: fd_right = *ur; break;
        case heatrk::scenario::half_line: break;
    }
    std::vector<double> xs;
    xs.reserve(pts.size());
    for (const auto& p : pts) xs.push_back(p.real());
    const auto fd = heatrk::fd_oracle(fd_left, fd_right, 400, 8000, xs);
    if (v.out.empty()) {
        heatrk::io::write_field_csv_with_oracle(std::cout, field, fd);
    } else {
        heatrk::io::write_field_csv_with_oracle(v.out, field, fd);
    }
    return 0;
}

// ----------------------------------------------------------------- synthesize

struct synth_vars {
    std::string scenario_name, target, out, control_out, control_right_out;
    std::string lambda = "auto";
    double T = 1.0;
    double tol = 1e-12;
    int grid = 2048;
    unsigned threads = 1;
};

int run_synthesize(const synth_vars& v) {
    const auto sc = heatrk::scenario_from_string(v.scenario_name);
    if (sc != heatrk::scenario::both && !v.control_right_out.empty()) {
        throw usage_error("synthesize: --control-right-out applies to scenario both only");
    }
    if (v.grid < 8) throw usage_error("synthesize: --grid (control samples) must be >= 8");
    const auto target = heatrk::io::read_target_csv(v.target, v.T);
    const auto res =
        heatrk::min_norm_control(sc, target, parse_lambda(v.lambda), v.grid,
                                 make_policy(v.tol), checked_threads(v.threads));

    const std::string control_path = v.control_out.empty() ? "control.csv" : v.control_out;
    heatrk::io::write_control_csv(control_path, res.control);
    std::string control_right_path;
    if (res.control_right) {
        control_right_path =
            v.control_right_out.empty() ? "control_right.csv" : v.control_right_out;
        heatrk::io::write_control_csv(control_right_path, *res.control_right);
    }

    ordered_json j;
    j["scenario"] = v.scenario_name;
    j["T"] = v.T;
    j["lambda"] = res.lambda;
    j["residual"] = res.residual;
    j["norm_estimate"] = res.norm_estimate;
    j["control_l2_norm"] = res.control.l2_norm();
    if (res.control_right) j["control_right_l2_norm"] = res.control_right->l2_norm();
    j["samples"] = v.grid;
    auto coeff = ordered_json::array();
    for (const auto& c : res.coefficients) coeff.push_back({c.real(), c.imag()});
    j["coefficients"] = coeff;
    j["control_csv"] = control_path;
    if (!control_right_path.empty()) j["control_right_csv"] = control_right_path;
    write_json(v.out, j);
    return 0;
}

// --------------------------------------------------------------------- verify

struct verify_vars {
    double T = 1.0;
    std::uint64_t seed = 7;
    std::string out;
};

int run_verify(const verify_vars& v) {
    const auto results = heatrk::invariant_suite(v.T, v.seed);
    std::printf("%-32s %-14s %-14s %s\n", "invariant", "defect", "threshold", "status");
    std::size_t passed = 0;
    for (const auto& r : results) {
        std::printf("%-32s %-14.6g %-14.6g %s\n", r.name.c_str(), r.defect, r.threshold,
                    r.pass ? "PASS" : "FAIL");
        if (r.pass) ++passed;
    }
    std::printf("%zu/%zu invariants pass\n", passed, results.size());
    if (!v.out.empty()) {
        std::ofstream out(v.out);
        if (!out) throw usage_error("cannot open for writing: " + v.out);
        out << "invariant,defect,threshold,status\n";
        for (const auto& r : results) {
            out << r.name << "," << heatrk::io::fmt(r.defect) << ","
                << heatrk::io::fmt(r.threshold) << "," << (r.pass ? "PASS" : "FAIL") << "\n";
        }
        if (!out) throw usage_error("write failed: " + v.out);
    }
    return passed == results.size() ? 0 : 1;
}

// --------------------------------------------------------------- feature-dump

struct feature_vars {
    std::string scenario_name, z, out;
    double T = 1.0;
    double tol = 1e-12;
    int grid = 256;
};

int run_feature_dump(const feature_vars& v) {
    const auto sc = heatrk::scenario_from_string(v.scenario_name);
    if (sc == heatrk::scenario::both) {
        throw usage_error(
            "feature-dump: scenario both has a two-component feature; dump left-only and "
            "right-only separately");
    }
    if (v.grid < 2) throw usage_error("feature-dump: --grid must be >= 2");
    const auto pol = make_policy(v.tol);
    const cplx z = parse_complex(v.z);
    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<std::size_t>(v.grid));
    for (int k = 0; k < v.grid; ++k) {
        const double t = (static_cast<double>(k) + 0.5) * v.T / v.grid;
        const cplx h = heatrk::feature(sc, z, v.T, t, pol);
        rows.push_back({t, h.real(), h.imag()});
    }
    write_table(v.out, {"t", "re_h", "im_h"}, rows);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reproducing kernels and minimal-norm boundary controls for the 1-D heat "
                 "equation"};
    app.require_subcommand(1);

    auto* ke_cmd = app.add_subcommand("kernel-eval", "Evaluate a kernel at point pairs");
    kernel_eval_vars ke;
    option_set ke_opts(ke_cmd);
    ke_opts.add_string("kind", ke.kind, "kernel kind (k0, left, right, plus, minus, full, "
                                        "half-line, bergman-sector, hardy-pullback, "
                                        "bergman-halfplane)");
    ke_opts.add_double("T", ke.T, "time horizon");
    ke_opts.add_double("tol", ke.tol, "series truncation tolerance");
    ke_opts.add_complex_list("z", ke.zs, "first argument(s), re or re,im (use --z=... for "
                                         "negative values)");
    ke_opts.add_complex_list("w", ke.ws, "second argument(s), re or re,im");
    ke_opts.add_string("out", ke.out, "output CSV path (default stdout)");
    ke_opts.require("kind");
    ke_opts.require("z");
    ke_opts.require("w");

    auto* gram_cmd = app.add_subcommand("gram", "Assemble a Gram matrix and check PSD");
    gram_vars gv;
    option_set gram_opts(gram_cmd);
    gram_opts.add_string("kind", gv.kind, "kernel kind");
    gram_opts.add_double("T", gv.T, "time horizon");
    gram_opts.add_double("tol", gv.tol, "series truncation tolerance");
    gram_opts.add_string("points", gv.points_path, "points CSV (column x, or re_z and im_z); "
                                                   "default: real grid");
    gram_opts.add_int("grid", gv.grid, "number of default real grid points");
    gram_opts.add_double("margin", gv.margin, "domain margin for grid inset and membership");
    gram_opts.add_unsigned("threads", gv.threads, "worker threads");
    gram_opts.add_string("out", gv.out, "output JSON path (default stdout)");
    gram_opts.require("kind");

    auto* solve_cmd = app.add_subcommand("solve", "Apply the control-to-state operator");
    solve_vars sv;
    option_set solve_opts(solve_cmd);
    solve_opts.add_string("scenario", sv.scenario_name,
                          "control scenario (left-only, right-only, anti-sym, sym, both, "
                          "half-line)");
    solve_opts.add_double("T", sv.T, "time horizon");
    solve_opts.add_double("tol", sv.tol, "series truncation tolerance");
    solve_opts.add_string("control", sv.control, "control CSV (t, re_u, im_u on the midpoint "
                                                 "grid)");
    solve_opts.add_string("control-right", sv.control_right,
                          "right-boundary control CSV (scenario both)");
    solve_opts.add_int("grid", sv.grid, "number of evaluation points");
    solve_opts.add_double("margin", sv.margin, "grid inset margin");
    solve_opts.add_unsigned("threads", sv.threads, "worker threads");
    solve_opts.add_flag("oracle", sv.oracle, "append Crank-Nicolson reference columns");
    solve_opts.add_string("out", sv.out, "output CSV path (default stdout)");
    solve_opts.require("scenario");
    solve_opts.require("control");

    auto* syn_cmd = app.add_subcommand("synthesize", "Synthesize a minimal-norm control");
    synth_vars yv;
    option_set syn_opts(syn_cmd);
    syn_opts.add_string("scenario", yv.scenario_name, "control scenario");
    syn_opts.add_double("T", yv.T, "time horizon");
    syn_opts.add_double("tol", yv.tol, "series truncation tolerance");
    syn_opts.add_string("target", yv.target, "target CSV (x or re_z,im_z plus re_w, im_w)");
    syn_opts.add_string("lambda", yv.lambda, "Tikhonov parameter: auto or a number >= 0");
    syn_opts.add_int("grid", yv.grid, "control samples M");
    syn_opts.add_unsigned("threads", yv.threads, "worker threads");
    syn_opts.add_string("out", yv.out, "result JSON path (default stdout)");
    syn_opts.add_string("control-out", yv.control_out,
                        "control CSV path (default control.csv)");
    syn_opts.add_string("control-right-out", yv.control_right_out,
                        "right control CSV path, scenario both (default control_right.csv)");
    syn_opts.require("scenario");
    syn_opts.require("target");

    auto* ver_cmd = app.add_subcommand("verify", "Run the invariant suite");
    verify_vars vv;
    option_set ver_opts(ver_cmd);
    ver_opts.add_double("T", vv.T, "time horizon for the suite");
    ver_opts.add_uint64("seed", vv.seed, "sampling seed");
    ver_opts.add_string("out", vv.out, "also write the table as CSV");

    auto* fd_cmd = app.add_subcommand("feature-dump", "Dump feature-map samples h_z(t)");
    feature_vars fv;
    option_set fd_opts(fd_cmd);
    fd_opts.add_string("scenario", fv.scenario_name, "control scenario");
    fd_opts.add_string("z", fv.z, "evaluation point, re or re,im");
    fd_opts.add_double("T", fv.T, "time horizon");
    fd_opts.add_double("tol", fv.tol, "series truncation tolerance");
    fd_opts.add_int("grid", fv.grid, "number of time samples");
    fd_opts.add_string("out", fv.out, "output CSV path (default stdout)");
    fd_opts.require("scenario");
    fd_opts.require("z");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (ke_cmd->parsed()) {
            ke_opts.finalize();
            return run_kernel_eval(ke);
        }
        if (gram_cmd->parsed()) {
            gram_opts.finalize();
            return run_gram(gv);
        }
        if (solve_cmd->parsed()) {
            solve_opts.finalize();
            return run_solve(sv);
        }
        if (syn_cmd->parsed()) {
            syn_opts.finalize();
            return run_synthesize(yv);
        }
        if (ver_cmd->parsed()) {
            ver_opts.finalize();
            return run_verify(vv);
        }
        if (fd_cmd->parsed()) {
            fd_opts.finalize();
            return run_feature_dump(fv);
        }
        std::cerr << "error: no command\n";
        return 1;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const heatrk::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const heatrk::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
