#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "heatrk/common.hpp"
#include "heatrk/control.hpp"

namespace heatrk::io {

// 17 significant digits: lossless round-trip for IEEE doubles.
inline std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct csv_table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

inline void write_csv(std::ostream& out, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        out << (i ? "," : "") << header[i];
    }
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << fmt(row[i]);
        }
        out << "\n";
    }
}

inline void write_csv(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw domain_error("cannot open for writing: " + path);
    write_csv(out, header, rows);
    if (!out) throw domain_error("write failed: " + path);
}

inline std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

inline csv_table read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open for reading: " + path);
    csv_table t;
    std::string line;
    if (!std::getline(in, line)) throw domain_error("empty CSV: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    t.header = split_line(line);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_line(line);
        if (cells.size() != t.header.size()) {
            throw domain_error(path + ":" + std::to_string(lineno) + ": expected " +
                               std::to_string(t.header.size()) + " columns, got " +
                               std::to_string(cells.size()));
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) {
            try {
                std::size_t used = 0;
                const double v = std::stod(c, &used);
                if (used != c.size()) throw std::invalid_argument(c);
                row.push_back(v);
            } catch (const std::exception&) {
                throw domain_error(path + ":" + std::to_string(lineno) +
                                   ": cannot parse number '" + c + "'");
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline int column(const csv_table& t, const std::string& name) {
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (t.header[i] == name) return static_cast<int>(i);
    }
    return -1;
}

namespace detail {

inline std::vector<std::vector<double>> control_rows(const control_signal& u) {
    std::vector<std::vector<double>> rows;
    rows.reserve(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) {
        rows.push_back({u.t_at(k), u.samples[k].real(), u.samples[k].imag()});
    }
    return rows;
}

inline std::vector<std::vector<double>> field_rows(const state_field& f) {
    std::vector<std::vector<double>> rows;
    rows.reserve(f.points.size());
    for (std::size_t i = 0; i < f.points.size(); ++i) {
        rows.push_back({f.points[i].real(), f.values[i].real(), f.values[i].imag()});
    }
    return rows;
}

}  // namespace detail

inline void write_control_csv(const std::string& path, const control_signal& u) {
    write_csv(path, {"t", "re_u", "im_u"}, detail::control_rows(u));
}

inline void write_control_csv(std::ostream& out, const control_signal& u) {
    write_csv(out, {"t", "re_u", "im_u"}, detail::control_rows(u));
}

// Control CSV contract: columns t, re_u, im_u with t on the midpoint grid
// (k+1/2) T/M for the given horizon.
inline control_signal read_control_csv(const std::string& path, double T) {
    const csv_table t = read_csv(path);
    const int ct = column(t, "t");
    const int cr = column(t, "re_u");
    const int ci = column(t, "im_u");
    if (ct < 0 || cr < 0 || ci < 0) {
        throw domain_error(path + ": control CSV needs columns t, re_u, im_u");
    }
    control_signal u{T, {}};
    u.samples.reserve(t.rows.size());
    const auto M = static_cast<double>(t.rows.size());
    for (std::size_t k = 0; k < t.rows.size(); ++k) {
        const double expect = (static_cast<double>(k) + 0.5) * T / M;
        if (std::abs(t.rows[k][static_cast<std::size_t>(ct)] - expect) > 1e-6 * T) {
            throw domain_error(path + ": t column is not the midpoint grid for T = " + fmt(T));
        }
        u.samples.push_back({t.rows[k][static_cast<std::size_t>(cr)],
                             t.rows[k][static_cast<std::size_t>(ci)]});
    }
    u.validate();
    return u;
}

// Target CSV contract: either (x, re_w, im_w) with real abscissae, or
// (re_z, im_z, re_w, im_w) for complex evaluation sites.
inline state_field read_target_csv(const std::string& path, double T) {
    const csv_table t = read_csv(path);
    const int cw_re = column(t, "re_w");
    const int cw_im = column(t, "im_w");
    if (cw_re < 0 || cw_im < 0) {
        throw domain_error(path + ": target CSV needs columns re_w, im_w");
    }
    const int cx = column(t, "x");
    const int cz_re = column(t, "re_z");
    const int cz_im = column(t, "im_z");
    if (cx < 0 && (cz_re < 0 || cz_im < 0)) {
        throw domain_error(path + ": target CSV needs column x or columns re_z, im_z");
    }
    state_field f{{}, {}, T};
    for (const auto& row : t.rows) {
        const cplx p = (cx >= 0) ? cplx{row[static_cast<std::size_t>(cx)], 0.0}
                                 : cplx{row[static_cast<std::size_t>(cz_re)],
                                        row[static_cast<std::size_t>(cz_im)]};
        f.points.push_back(p);
        f.values.push_back({row[static_cast<std::size_t>(cw_re)],
                            row[static_cast<std::size_t>(cw_im)]});
    }
    return f;
}

inline void write_field_csv(const std::string& path, const state_field& f) {
    write_csv(path, {"x", "re_w", "im_w"}, detail::field_rows(f));
}

inline void write_field_csv(std::ostream& out, const state_field& f) {
    write_csv(out, {"x", "re_w", "im_w"}, detail::field_rows(f));
}

namespace detail {

inline std::vector<std::vector<double>> field_oracle_rows(const state_field& f,
                                                          const state_field& oracle) {
    if (oracle.values.size() != f.values.size()) {
        throw domain_error("write_field_csv_with_oracle: size mismatch");
    }
    std::vector<std::vector<double>> rows;
    rows.reserve(f.points.size());
    for (std::size_t i = 0; i < f.points.size(); ++i) {
        rows.push_back({f.points[i].real(), f.values[i].real(), f.values[i].imag(),
                        oracle.values[i].real(), oracle.values[i].imag(),
                        std::abs(f.values[i] - oracle.values[i])});
    }
    return rows;
}

}  // namespace detail

inline const std::vector<std::string>& field_oracle_header() {
    static const std::vector<std::string> h{"x",       "re_w",    "im_w",
                                            "re_w_fd", "im_w_fd", "abs_diff"};
    return h;
}

inline void write_field_csv_with_oracle(const std::string& path, const state_field& f,
                                        const state_field& oracle) {
    write_csv(path, field_oracle_header(), detail::field_oracle_rows(f, oracle));
}

inline void write_field_csv_with_oracle(std::ostream& out, const state_field& f,
                                        const state_field& oracle) {
    write_csv(out, field_oracle_header(), detail::field_oracle_rows(f, oracle));
}

}  // namespace heatrk::io
