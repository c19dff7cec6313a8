#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qwalk/qwalk.hpp"

namespace {

struct GlobalOptions {
    double theta = 0.7853981633974483;
    int horizon = 2000;
    double tail_fraction = 0.5;
    int t1 = 400;
    double epsilon = 1.0;
    bool oracle = false;
    std::string out;
    std::string format = "csv";
    int threads = 0;
};

qwalk::OutputFormat parse_format(const std::string& name) {
    return name == "json" ? qwalk::OutputFormat::json
                          : qwalk::OutputFormat::csv;
}

// "lo:hi:count" -> axis; the name is filled in by the sweep mode.
qwalk::SweepAxis parse_axis(const std::string& text) {
    const auto first = text.find(':');
    const auto second = text.find(':', first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw std::invalid_argument("axis must be lo:hi:count, got '" + text +
                                    "'");
    try {
        const double lo = std::stod(text.substr(0, first));
        const double hi = std::stod(text.substr(first + 1, second - first - 1));
        const int count = std::stoi(text.substr(second + 1));
        return qwalk::SweepAxis{"", lo, hi, count};
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("axis must be lo:hi:count, got '" + text +
                                    "'");
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("axis value out of range in '" + text +
                                    "'");
    }
}

void require_hadamard(const qwalk::CoinAngle& coin) {
    if (!coin.is_hadamard())
        throw std::domain_error(
            "closed-form outputs require the Hadamard coin (theta = pi/4); "
            "use the evolve or asymptotics subcommands for other angles");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Discrete-time quantum walk on the line: simulation, closed-form "
        "asymptotics, and the entanglement thermodynamics of the "
        "evolve-measure-re-evolve protocol."};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "key=value file; command-line flags take precedence");

    GlobalOptions opts;
    app.add_option("--theta", opts.theta,
                   "coin angle in [0, pi/2] (default: Hadamard, pi/4)")
        ->capture_default_str();
    app.add_option("--horizon", opts.horizon,
                   "steps for asymptotic runs (>= 100)")
        ->capture_default_str();
    app.add_option("--tail-fraction", opts.tail_fraction,
                   "trailing fraction of steps averaged, in (0, 1/2]")
        ->capture_default_str();
    app.add_option("--t1", opts.t1, "steps before the measurement stage")
        ->capture_default_str();
    app.add_option("--epsilon", opts.epsilon, "energy unit (> 0)")
        ->capture_default_str();
    app.add_flag("--oracle", opts.oracle,
                 "also compute the brute-force post-measurement density");
    app.add_option("--out", opts.out, "output file (default: stdout)");
    app.add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--threads", opts.threads,
                   "sweep worker threads, 0 = hardware concurrency")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    double gamma = 0.0;
    double phi = 0.0;
    int steps = 100;
    int points1 = 200;
    int points2 = 100;
    std::string mode = "bloch";
    std::string axis1_text;
    std::string axis2_text;
    bool simulate = false;

    CLI::App* evolve_cmd = app.add_subcommand(
        "evolve", "run the walker and dump the final spinor field");
    evolve_cmd->add_option("--gamma", gamma, "initial Bloch polar angle")
        ->capture_default_str();
    evolve_cmd->add_option("--phi", phi, "initial Bloch azimuthal angle")
        ->capture_default_str();
    evolve_cmd->add_option("--steps", steps, "number of steps")
        ->capture_default_str();

    CLI::App* asym_cmd = app.add_subcommand(
        "asymptotics",
        "tail-averaged P_L and Q next to their closed forms (closed forms "
        "are null for non-Hadamard coins)");
    asym_cmd->add_option("--gamma", gamma, "initial Bloch polar angle")
        ->capture_default_str();
    asym_cmd->add_option("--phi", phi, "initial Bloch azimuthal angle")
        ->capture_default_str();

    CLI::App* protocol_cmd = app.add_subcommand(
        "protocol",
        "full evolve-measure-re-evolve run: tail estimate, densities, "
        "canonical-ensemble states, entropy bounds");
    protocol_cmd->add_option("--gamma", gamma, "initial Bloch polar angle")
        ->capture_default_str();
    protocol_cmd->add_option("--phi", phi, "initial Bloch azimuthal angle")
        ->capture_default_str();

    CLI::App* figure1_cmd = app.add_subcommand(
        "figure1", "entropy change vs mu^2 along the phi = 0 line");
    figure1_cmd->add_option("--points", points1, "number of mu^2 points")
        ->capture_default_str();

    CLI::App* figure2_cmd = app.add_subcommand(
        "figure2", "entropy change between its bounds over the (mu, nu) disk");
    figure2_cmd->add_option("--points", points2, "points per axis")
        ->capture_default_str();

    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "closed-form process evaluation over a parameter grid");
    sweep_cmd->add_option("--mode", mode, "grid coordinates")
        ->check(CLI::IsMember({"bloch", "q0plane"}))
        ->capture_default_str();
    sweep_cmd->add_option("--axis1", axis1_text,
                          "lo:hi:count for gamma (bloch) or mu (q0plane)")
        ->required();
    sweep_cmd->add_option("--axis2", axis2_text,
                          "lo:hi:count for phi (bloch) or nu (q0plane)")
        ->required();
    sweep_cmd->add_flag("--simulate", simulate,
                        "also run a tail estimate per grid point (bloch mode)");

    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "run every module invariant; nonzero exit on any failure");

    for (CLI::App* sub : {evolve_cmd, asym_cmd, protocol_cmd, figure1_cmd,
                          figure2_cmd, sweep_cmd, verify_cmd})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const qwalk::CoinAngle coin{opts.theta};
        const qwalk::OutputFormat format = parse_format(opts.format);

        if (*evolve_cmd) {
            const qwalk::SpinorField state =
                qwalk::evolve(qwalk::init_localized(qwalk::BlochAngles{
                                  gamma, phi}),
                              coin, steps);
            std::vector<qwalk::StateRow> rows;
            rows.reserve(state.size());
            for (std::size_t i = 0; i < state.size(); ++i) {
                const qwalk::complex a = state.left_amps[i];
                const qwalk::complex b = state.right_amps[i];
                rows.push_back(qwalk::StateRow{
                    state.site_at(i), a.real(), a.imag(), b.real(), b.imag(),
                    std::norm(a) + std::norm(b)});
            }
            qwalk::write_output(
                opts.out,
                qwalk::render_table(rows, qwalk::state_schema, format));
            return 0;
        }

        if (*asym_cmd) {
            const qwalk::BlochAngles bloch{gamma, phi};
            const qwalk::AsymptoticEstimate est = qwalk::estimate_asymptotics(
                bloch, coin, opts.horizon, opts.tail_fraction);
            double mu = qwalk::RunRecord::nan_v;
            double nu = qwalk::RunRecord::nan_v;
            if (coin.is_hadamard()) {
                const qwalk::InterferenceTerm q0 =
                    qwalk::analytic_q0(bloch, coin);
                mu = q0.mu;
                nu = q0.nu;
            }
            const std::vector<qwalk::AsymptoticsRow> rows = {
                {gamma, phi, coin.theta, opts.horizon, opts.tail_fraction,
                 est.pi_L, est.pi_R, est.q0.mu, est.q0.nu, est.tail_std, mu,
                 nu}};
            qwalk::write_output(
                opts.out,
                qwalk::render_table(rows, qwalk::asymptotics_schema, format));
            return 0;
        }

        if (*protocol_cmd) {
            qwalk::ProtocolParams params;
            params.t1 = opts.t1;
            params.horizon = opts.horizon;
            params.tail_fraction = opts.tail_fraction;
            params.scale = qwalk::EnergyScale{opts.epsilon};
            params.oracle = opts.oracle;
            const std::vector<qwalk::RunRecord> rows = {qwalk::run_protocol(
                qwalk::BlochAngles{gamma, phi}, coin, params)};
            qwalk::write_output(
                opts.out,
                qwalk::render_table(rows, qwalk::runrecord_schema, format));
            return 0;
        }

        if (*figure1_cmd) {
            require_hadamard(coin);
            qwalk::write_output(
                opts.out,
                qwalk::render_table(
                    qwalk::figure1_rows(points1,
                                        qwalk::EnergyScale{opts.epsilon}),
                    qwalk::figure1_schema, format));
            return 0;
        }

        if (*figure2_cmd) {
            require_hadamard(coin);
            qwalk::write_output(
                opts.out,
                qwalk::render_table(
                    qwalk::figure2_rows(points2,
                                        qwalk::EnergyScale{opts.epsilon}),
                    qwalk::figure2_schema, format));
            return 0;
        }

        if (*sweep_cmd) {
            const qwalk::SweepMode sweep_mode = mode == "bloch"
                                                    ? qwalk::SweepMode::bloch
                                                    : qwalk::SweepMode::q0_plane;
            const qwalk::SweepGrid grid{sweep_mode, parse_axis(axis1_text),
                                        parse_axis(axis2_text)};
            qwalk::SweepFixed fixed;
            fixed.coin = coin;
            fixed.scale = qwalk::EnergyScale{opts.epsilon};
            fixed.simulate = simulate;
            fixed.horizon = opts.horizon;
            fixed.tail_fraction = opts.tail_fraction;
            fixed.threads = opts.threads;
            qwalk::write_output(
                opts.out,
                qwalk::render_table(qwalk::run_sweep(grid, fixed),
                                    qwalk::runrecord_schema, format));
            return 0;
        }

        if (*verify_cmd) {
            const qwalk::VerifySummary summary =
                qwalk::run_verify(opts.threads);
            for (const qwalk::CheckResult& c : summary.checks)
                std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
                          << ": " << c.details << "\n";
            std::cout << "verify: "
                      << summary.checks.size() - summary.failures() << " of "
                      << summary.checks.size() << " checks passed\n";
            if (!opts.out.empty())
                qwalk::write_output(
                    opts.out, qwalk::render_table(summary.checks,
                                                  qwalk::verify_schema,
                                                  format));
            return summary.all_pass() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    return 2;
}
