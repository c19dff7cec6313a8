#pragma once

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qwalk/asymptotics.hpp"
#include "qwalk/measurement.hpp"
#include "qwalk/records.hpp"
#include "qwalk/thermo.hpp"
#include "qwalk/walker.hpp"

namespace qwalk {

// Static block partition of [0, count). Each index writes only its own
// result slot, so the output is identical for any thread count; a thrown
// exception from any worker is rethrown after all workers have joined.
inline void parallel_for(int count, int threads,
                         const std::function<void(int)>& body) {
    if (count <= 0) return;
    unsigned workers =
        threads > 0 ? static_cast<unsigned>(threads)
                    : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, static_cast<unsigned>(count));
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }

    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::mutex error_mutex;
    std::exception_ptr error;
    for (unsigned w = 0; w < workers; ++w) {
        const int begin = static_cast<int>(
            static_cast<long long>(count) * w / workers);
        const int end = static_cast<int>(
            static_cast<long long>(count) * (w + 1) / workers);
        pool.emplace_back([&body, &error_mutex, &error, begin, end] {
            try {
                for (int i = begin; i < end; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

// Copies one process evaluation into the flattened record layout.
inline void fill_analytics(RunRecord& rec, const ProcessReport& rep) {
    rec.mu = rep.q0.mu;
    rec.nu = rep.q0.nu;

    rec.rho1c_pi_L = rep.rho1.pi_L;
    rec.rho1c_pi_R = rep.rho1.pi_R;
    rec.rho1c_q_re = rep.rho1.q.real();
    rec.rho1c_q_im = rep.rho1.q.imag();

    rec.rho2c_pi_L = rep.rho2.pi_L;
    rec.rho2c_pi_R = rep.rho2.pi_R;
    rec.rho2c_q_re = rep.rho2.q.real();
    rec.rho2c_q_im = rep.rho2.q.imag();

    rec.lambda1_plus = rep.stage1.lambda_plus;
    rec.lambda1_minus = rep.stage1.lambda_minus;
    rec.S_rho1c = rep.stage1.entropy;
    rec.beta1 = rep.stage1.beta;
    rec.T1 = rep.stage1.temperature;
    rec.T1_kind = to_string(rep.stage1.kind);
    rec.Z1 = rep.stage1.partition;
    rec.U1 = rep.stage1.internal_energy;

    rec.lambda2_plus = rep.stage2.lambda_plus;
    rec.lambda2_minus = rep.stage2.lambda_minus;
    rec.S_rho2c = rep.stage2.entropy;
    rec.beta2 = rep.stage2.beta;
    rec.T2 = rep.stage2.temperature;
    rec.T2_kind = to_string(rep.stage2.kind);
    rec.Z2 = rep.stage2.partition;
    rec.U2 = rep.stage2.internal_energy;

    const BoundsReport& b = rep.bounds;
    rec.dS_exact = b.dS_exact;
    rec.dS_approx = b.dS_approx;
    rec.S2_bound = b.S2_bound;
    rec.gap_exact = b.S2_bound - rep.stage2.entropy;
    rec.gap_approx = b.gap_approx;
    rec.J1 = b.J1;
    rec.J2_exact = b.J2_exact;
    rec.J2_paper = b.J2_paper;
    rec.dU = b.dU;
    rec.dT = b.dT;
    rec.heat = b.heat;
    rec.work = b.work;
    rec.first_law_ok = b.first_law_ok;
    rec.second_law_ok = b.second_law_ok;
    rec.sandwich_ok = b.sandwich_ok;
}

struct ProtocolParams {
    int t1 = 400;
    int horizon = 2000;
    double tail_fraction = 0.5;
    EnergyScale scale{};
    bool oracle = false;
};

// One full protocol evaluation: long first run for the tail estimate,
// closed-form process analysis, then the actual measure-and-re-evolve stage
// (with the per-branch brute-force density when oracle is set).
inline RunRecord run_protocol(const BlochAngles& bloch, const CoinAngle& coin,
                              const ProtocolParams& params = ProtocolParams{}) {
    const InterferenceTerm q0 = analytic_q0(bloch, coin);
    const ProcessReport rep = process_report(q0, params.scale);

    RunRecord rec;
    rec.gamma = bloch.gamma;
    rec.phi = bloch.phi;
    rec.theta = coin.theta;
    rec.t1 = params.t1;
    rec.horizon = params.horizon;
    rec.tail_fraction = params.tail_fraction;
    rec.epsilon = params.scale.epsilon;
    fill_analytics(rec, rep);

    const AsymptoticEstimate est = estimate_asymptotics(
        bloch, coin, params.horizon, params.tail_fraction);
    rec.est_pi_L = est.pi_L;
    rec.est_pi_R = est.pi_R;
    rec.est_q0_re = est.q0.mu;
    rec.est_q0_im = est.q0.nu;
    rec.est_tail_std = est.tail_std;

    const SpinorField measured =
        evolve(init_localized(bloch), coin, params.t1);
    const MixedEnsemble ensemble = collapse(measured);
    if (params.oracle) {
        const ChiralityDensity bf = rho2c_bruteforce(
            ensemble, coin, params.horizon, params.tail_fraction,
            /*literal=*/true);
        rec.rho2c_bf_pi_L = bf.pi_L;
        rec.rho2c_bf_pi_R = bf.pi_R;
        rec.rho2c_bf_q_re = bf.q.real();
        rec.rho2c_bf_q_im = bf.q.imag();
    }
    return rec;
}

enum class SweepMode { bloch, q0_plane };

struct SweepAxis {
    std::string name;
    double lo;
    double hi;
    int count;

    SweepAxis(std::string n, double l, double h, int c)
        : name(std::move(n)), lo(l), hi(h), count(c) {
        if (count < 2)
            throw std::invalid_argument("sweep axis needs at least 2 points");
    }

    // Ratio-first form so value(count - 1) lands exactly on hi.
    double value(int i) const {
        return lo + (hi - lo) * (static_cast<double>(i) /
                                 static_cast<double>(count - 1));
    }
};

struct SweepGrid {
    SweepMode mode;
    SweepAxis axis1;
    SweepAxis axis2;

    SweepGrid(SweepMode m, SweepAxis a1, SweepAxis a2)
        : mode(m), axis1(std::move(a1)), axis2(std::move(a2)) {
        const char* want1 = (mode == SweepMode::bloch) ? "gamma" : "mu";
        const char* want2 = (mode == SweepMode::bloch) ? "phi" : "nu";
        if (axis1.name.empty()) axis1.name = want1;
        if (axis2.name.empty()) axis2.name = want2;
        if (axis1.name != want1 || axis2.name != want2)
            throw std::invalid_argument(
                "axis names must be " + std::string(want1) + "/" + want2 +
                " for this sweep mode, got " + axis1.name + "/" + axis2.name);
    }

    int size() const { return axis1.count * axis2.count; }
};

struct SweepFixed {
    CoinAngle coin{};
    EnergyScale scale{};
    bool simulate = false;
    int horizon = 2000;
    double tail_fraction = 0.5;
    int threads = 0;
};

// Evaluates the closed-form process over the grid, row-major with axis1
// outermost. Bloch-mode points may additionally carry a tail estimate
// (simulate flag); interference-plane points have no initial state to
// simulate, and points outside the reachable disk |Q0| <= (1/sqrt(2))(1 -
// 1/sqrt(2)) are emitted with skipped = 1 rather than dropped, keeping the
// output a dense grid.
inline std::vector<RunRecord> run_sweep(const SweepGrid& grid,
                                        const SweepFixed& fixed = SweepFixed{}) {
    if (!fixed.coin.is_hadamard())
        throw std::domain_error(
            "sweeps evaluate closed-form asymptotics, which require the "
            "Hadamard coin (theta = pi/4)");
    if (grid.mode == SweepMode::q0_plane && fixed.simulate)
        throw std::invalid_argument(
            "cannot simulate in the interference-plane mode: a bare (mu, nu) "
            "point does not determine an initial state");

    std::vector<RunRecord> records(grid.size());
    parallel_for(grid.size(), fixed.threads, [&](int idx) {
        const int i1 = idx / grid.axis2.count;
        const int i2 = idx % grid.axis2.count;
        const double v1 = grid.axis1.value(i1);
        const double v2 = grid.axis2.value(i2);

        RunRecord rec;
        rec.theta = fixed.coin.theta;
        rec.epsilon = fixed.scale.epsilon;

        if (grid.mode == SweepMode::bloch) {
            const BlochAngles bloch{v1, v2};
            rec.gamma = v1;
            rec.phi = v2;
            fill_analytics(rec, process_report(analytic_q0(bloch, fixed.coin),
                                               fixed.scale));
            if (fixed.simulate) {
                rec.horizon = fixed.horizon;
                rec.tail_fraction = fixed.tail_fraction;
                const AsymptoticEstimate est = estimate_asymptotics(
                    bloch, fixed.coin, fixed.horizon, fixed.tail_fraction);
                rec.est_pi_L = est.pi_L;
                rec.est_pi_R = est.pi_R;
                rec.est_q0_re = est.q0.mu;
                rec.est_q0_im = est.q0.nu;
                rec.est_tail_std = est.tail_std;
            }
        } else {
            rec.mu = v1;
            rec.nu = v2;
            const double r2 = q0_reach_radius * q0_reach_radius;
            if (v1 * v1 + v2 * v2 > r2 + 1e-12) {
                rec.skipped = true;
            } else {
                fill_analytics(rec, process_report(InterferenceTerm{v1, v2},
                                                   fixed.scale));
            }
        }
        records[idx] = std::move(rec);
    });
    return records;
}

// Entropy change along the phi = 0 line, parameterized directly by mu^2
// (uniform in mu^2 so the file plots as-is against the quadratic
// approximation).
inline std::vector<Figure1Row> figure1_rows(
    int points = 200, const EnergyScale& scale = EnergyScale{}) {
    if (points < 2)
        throw std::invalid_argument("figure requires at least 2 points");
    std::vector<Figure1Row> rows;
    rows.reserve(points);
    for (int i = 0; i < points; ++i) {
        const double mu2 = 0.04 * (static_cast<double>(i) /
                                   static_cast<double>(points - 1));
        const ProcessReport rep =
            process_report(InterferenceTerm{std::sqrt(mu2), 0.0}, scale);
        rows.push_back(Figure1Row{mu2, rep.bounds.dS_exact,
                                  rep.bounds.dS_approx,
                                  rep.bounds.S2_bound - rep.stage2.entropy,
                                  rep.bounds.gap_approx});
    }
    return rows;
}

// Entropy production between its two bounds over the reachable square
// [-r0, r0]^2, mu outermost; corners beyond the disk keep their coordinates
// with skipped = 1.
inline std::vector<Figure2Row> figure2_rows(
    int points_per_axis = 100, const EnergyScale& scale = EnergyScale{}) {
    if (points_per_axis < 2)
        throw std::invalid_argument("figure requires at least 2 points");
    const int n = points_per_axis;
    const double r0 = q0_reach_radius;
    constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

    std::vector<Figure2Row> rows(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        const double mu =
            -r0 + 2.0 * r0 * (static_cast<double>(i) / (n - 1));
        for (int j = 0; j < n; ++j) {
            const double nu =
                -r0 + 2.0 * r0 * (static_cast<double>(j) / (n - 1));
            Figure2Row& row = rows[static_cast<size_t>(i) * n + j];
            if (mu * mu + nu * nu > r0 * r0 + 1e-12) {
                row = Figure2Row{mu, nu, nan_v, nan_v, nan_v, nan_v, true};
                continue;
            }
            const ProcessReport rep =
                process_report(InterferenceTerm{mu, nu}, scale);
            row = Figure2Row{mu,
                             nu,
                             rep.bounds.dS_exact,
                             rep.bounds.J1,
                             rep.bounds.J2_exact,
                             rep.bounds.J2_paper,
                             false};
        }
    }
    return rows;
}

}  // namespace qwalk
