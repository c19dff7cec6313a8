#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qwalk {

// Schema tags embedded in every output file. Bump a tag whenever its column
// set changes; the verify suite pins the current header strings.
inline constexpr const char* runrecord_schema = "qwalk.runrecord.v1";
inline constexpr const char* figure1_schema = "qwalk.figure1.v1";
inline constexpr const char* figure2_schema = "qwalk.figure2.v1";
inline constexpr const char* state_schema = "qwalk.state.v1";
inline constexpr const char* asymptotics_schema = "qwalk.asymptotics.v1";

// All floats are serialized at 12 significant digits. CSV spells
// non-finite values out ("nan", "inf", "-inf"); JSON has no spelling for
// them, so they become null.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// One typed value in an output row. Booleans print as 0/1 in CSV and as
// true/false in JSON; text values never need escaping in practice but get
// it anyway.
using Cell = std::variant<double, long long, bool, std::string>;

inline std::string escape_json(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

inline std::string cell_csv(const Cell& cell) {
    struct Visitor {
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(bool v) const { return v ? "1" : "0"; }
        std::string operator()(const std::string& v) const {
            if (v.find_first_of(",\"\n") == std::string::npos) return v;
            std::string quoted = "\"";
            for (char c : v) {
                if (c == '"') quoted += "\"\"";
                else quoted += c;
            }
            quoted += '"';
            return quoted;
        }
    };
    return std::visit(Visitor{}, cell);
}

inline std::string cell_json(const Cell& cell) {
    struct Visitor {
        std::string operator()(double v) const {
            if (std::isnan(v) || std::isinf(v)) return "null";
            return format_double(v);
        }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(const std::string& v) const {
            return "\"" + escape_json(v) + "\"";
        }
    };
    return std::visit(Visitor{}, cell);
}

// Flattened result of one full protocol evaluation. Column blocks:
// inputs, analytic interference term, simulated tail estimate, the three
// densities (entries as re/im pairs), both canonical-ensemble states, the
// bounds ledger, law flags, and the sweep skip marker. Estimate and
// brute-force blocks stay NaN on analytic-only runs; gamma/phi stay NaN on
// interference-plane sweeps where no initial state is involved.
struct RunRecord {
    static constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

    double gamma = nan_v;
    double phi = nan_v;
    double theta = nan_v;
    long long t1 = 0;
    long long horizon = 0;
    double tail_fraction = nan_v;
    double epsilon = nan_v;

    double mu = nan_v;
    double nu = nan_v;

    double est_pi_L = nan_v;
    double est_pi_R = nan_v;
    double est_q0_re = nan_v;
    double est_q0_im = nan_v;
    double est_tail_std = nan_v;

    double rho1c_pi_L = nan_v;
    double rho1c_pi_R = nan_v;
    double rho1c_q_re = nan_v;
    double rho1c_q_im = nan_v;

    double rho2c_pi_L = nan_v;
    double rho2c_pi_R = nan_v;
    double rho2c_q_re = nan_v;
    double rho2c_q_im = nan_v;

    double rho2c_bf_pi_L = nan_v;
    double rho2c_bf_pi_R = nan_v;
    double rho2c_bf_q_re = nan_v;
    double rho2c_bf_q_im = nan_v;

    double lambda1_plus = nan_v;
    double lambda1_minus = nan_v;
    double S_rho1c = nan_v;
    double beta1 = nan_v;
    double T1 = nan_v;
    std::string T1_kind;
    double Z1 = nan_v;
    double U1 = nan_v;

    double lambda2_plus = nan_v;
    double lambda2_minus = nan_v;
    double S_rho2c = nan_v;
    double beta2 = nan_v;
    double T2 = nan_v;
    std::string T2_kind;
    double Z2 = nan_v;
    double U2 = nan_v;

    double dS_exact = nan_v;
    double dS_approx = nan_v;
    double S2_bound = nan_v;
    double gap_exact = nan_v;
    double gap_approx = nan_v;
    double J1 = nan_v;
    double J2_exact = nan_v;
    double J2_paper = nan_v;
    double dU = nan_v;
    double dT = nan_v;
    double heat = nan_v;
    double work = nan_v;

    bool first_law_ok = false;
    bool second_law_ok = false;
    bool sandwich_ok = false;
    bool skipped = false;

    static const std::vector<std::string>& columns() {
        static const std::vector<std::string> cols = {
            "gamma", "phi", "theta", "t1", "horizon", "tail_fraction",
            "epsilon",
            "mu", "nu",
            "est_pi_L", "est_pi_R", "est_q0_re", "est_q0_im", "est_tail_std",
            "rho1c_pi_L", "rho1c_pi_R", "rho1c_q_re", "rho1c_q_im",
            "rho2c_pi_L", "rho2c_pi_R", "rho2c_q_re", "rho2c_q_im",
            "rho2c_bf_pi_L", "rho2c_bf_pi_R", "rho2c_bf_q_re", "rho2c_bf_q_im",
            "lambda1_plus", "lambda1_minus", "S_rho1c", "beta1", "T1",
            "T1_kind", "Z1", "U1",
            "lambda2_plus", "lambda2_minus", "S_rho2c", "beta2", "T2",
            "T2_kind", "Z2", "U2",
            "dS_exact", "dS_approx", "S2_bound", "gap_exact", "gap_approx",
            "J1", "J2_exact", "J2_paper", "dU", "dT", "heat", "work",
            "first_law_ok", "second_law_ok", "sandwich_ok",
            "skipped",
        };
        return cols;
    }

    std::vector<Cell> cells() const {
        return {
            gamma, phi, theta, t1, horizon, tail_fraction, epsilon,
            mu, nu,
            est_pi_L, est_pi_R, est_q0_re, est_q0_im, est_tail_std,
            rho1c_pi_L, rho1c_pi_R, rho1c_q_re, rho1c_q_im,
            rho2c_pi_L, rho2c_pi_R, rho2c_q_re, rho2c_q_im,
            rho2c_bf_pi_L, rho2c_bf_pi_R, rho2c_bf_q_re, rho2c_bf_q_im,
            lambda1_plus, lambda1_minus, S_rho1c, beta1, T1,
            T1_kind, Z1, U1,
            lambda2_plus, lambda2_minus, S_rho2c, beta2, T2,
            T2_kind, Z2, U2,
            dS_exact, dS_approx, S2_bound, gap_exact, gap_approx,
            J1, J2_exact, J2_paper, dU, dT, heat, work,
            first_law_ok, second_law_ok, sandwich_ok,
            skipped,
        };
    }
};

// Row of the entropy-change-vs-mu^2 data set (phi = 0 line).
struct Figure1Row {
    double mu2;
    double dS_exact;
    double dS_approx;
    double gap_exact;
    double gap_approx;

    static const std::vector<std::string>& columns() {
        static const std::vector<std::string> cols = {
            "mu2", "dS_exact", "dS_approx", "gap_exact", "gap_approx",
        };
        return cols;
    }

    std::vector<Cell> cells() const {
        return {mu2, dS_exact, dS_approx, gap_exact, gap_approx};
    }
};

// Row of the entropy-sandwich data set over the (mu, nu) plane. Grid points
// outside the reachable disk are kept with skipped = 1 and NaN values so the
// file stays a dense, plottable grid.
struct Figure2Row {
    double mu;
    double nu;
    double dS_exact;
    double J1;
    double J2_exact;
    double J2_paper;
    bool skipped;

    static const std::vector<std::string>& columns() {
        static const std::vector<std::string> cols = {
            "mu", "nu", "dS_exact", "J1", "J2_exact", "J2_paper", "skipped",
        };
        return cols;
    }

    std::vector<Cell> cells() const {
        return {mu, nu, dS_exact, J1, J2_exact, J2_paper, skipped};
    }
};

// Per-site snapshot of a walker state, spinor entries as re/im pairs.
struct StateRow {
    long long site;
    double left_re;
    double left_im;
    double right_re;
    double right_im;
    double probability;

    static const std::vector<std::string>& columns() {
        static const std::vector<std::string> cols = {
            "site", "left_re", "left_im", "right_re", "right_im",
            "probability",
        };
        return cols;
    }

    std::vector<Cell> cells() const {
        return {site, left_re, left_im, right_re, right_im, probability};
    }
};

// Tail-averaged observables of one long run next to their closed-form
// values (NaN when the coin has no closed form).
struct AsymptoticsRow {
    double gamma;
    double phi;
    double theta;
    long long horizon;
    double tail_fraction;
    double est_pi_L;
    double est_pi_R;
    double est_q0_re;
    double est_q0_im;
    double est_tail_std;
    double mu;
    double nu;

    static const std::vector<std::string>& columns() {
        static const std::vector<std::string> cols = {
            "gamma", "phi", "theta", "horizon", "tail_fraction",
            "est_pi_L", "est_pi_R", "est_q0_re", "est_q0_im", "est_tail_std",
            "mu", "nu",
        };
        return cols;
    }

    std::vector<Cell> cells() const {
        return {gamma, phi, theta, horizon, tail_fraction,
                est_pi_L, est_pi_R, est_q0_re, est_q0_im, est_tail_std,
                mu, nu};
    }
};

template <typename Row>
std::string csv_header(const Row* = nullptr) {
    std::string line;
    const auto& cols = Row::columns();
    for (size_t i = 0; i < cols.size(); ++i) {
        if (i) line += ',';
        line += cols[i];
    }
    return line;
}

// CSV layout: one comment line carrying the schema tag, the header row,
// then one line per record.
template <typename Row>
std::string to_csv(const std::vector<Row>& rows, const char* schema) {
    std::string out = "# ";
    out += schema;
    out += '\n';
    out += csv_header<Row>();
    out += '\n';
    for (const Row& row : rows) {
        const auto cells = row.cells();
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cell_csv(cells[i]);
        }
        out += '\n';
    }
    return out;
}

// JSON layout: {"schema": ..., "rows": [...]} with one object per record,
// keys in column order, one row object per line.
template <typename Row>
std::string to_json(const std::vector<Row>& rows, const char* schema) {
    std::string out = "{\n  \"schema\": \"";
    out += schema;
    out += "\",\n  \"rows\": [";
    const auto& cols = Row::columns();
    for (size_t r = 0; r < rows.size(); ++r) {
        out += (r == 0) ? "\n" : ",\n";
        out += "    {";
        const auto cells = rows[r].cells();
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ", ";
            out += "\"" + cols[i] + "\": " + cell_json(cells[i]);
        }
        out += "}";
    }
    out += rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

enum class OutputFormat { csv, json };

template <typename Row>
std::string render_table(const std::vector<Row>& rows, const char* schema,
                         OutputFormat format) {
    return format == OutputFormat::csv ? to_csv(rows, schema)
                                       : to_json(rows, schema);
}

// Empty path means stdout.
inline void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw std::runtime_error("cannot open output file: " + path);
    file << content;
    if (!file)
        throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace qwalk
