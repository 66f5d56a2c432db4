#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "msgate/errors.hpp"
#include "msgate/metrics.hpp"
#include "msgate/presets.hpp"
#include "msgate/scan.hpp"

namespace msgate {

namespace {

constexpr double pi = std::numbers::pi;

struct SequenceFlags {
    std::string kind = "single";
    std::string shape = "const";
    std::string theta;
    std::string eps;
    std::string window;
    std::string preset;

    void attach(CLI::App* cmd) {
        cmd->add_option("--sequence", kind, "single, B1 or B2")
            ->check(CLI::IsMember({"single", "B1", "B2"}));
        cmd->add_option("--shape", shape, "const, sin14, sin32, sincos or twotone");
        cmd->add_option("--theta", theta, "target rotation angle (default pi/4)");
        cmd->add_option("--eps", eps, "detuning (default: shape preset)");
        cmd->add_option("--window", window, "sequence window '<from>:<to>', e.g. 0:2pi");
        cmd->add_option("--preset", preset, "physical preset (yb171); overrides the above");
    }

    SequenceSpec spec() const {
        SequenceSpec s;
        s.kind = kind;
        s.shape = shape;
        if (!theta.empty()) s.theta = parse_angle_expr(theta);
        if (!eps.empty()) s.eps = parse_angle_expr(eps);
        if (!window.empty()) s.window = parse_window_expr(window);
        s.preset = preset;
        return s;
    }
};

void print_populations(const GateSequence& seq, const ErrorModel& err,
                       const IntegratorSettings& settings, const HilbertConfig& cfg,
                       int samples, std::ostream& out) {
    Vector psi = Vector::Zero(cfg.total_dim());
    psi(0) = 1.0;
    const int nf = cfg.n_fock;
    const auto emit = [&](double t) {
        double p[4];
        for (int s = 0; s < 4; ++s) p[s] = psi.segment(s * nf, nf).squaredNorm();
        char line[160];
        std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g,%.12g\n", t, p[0], p[1],
                      p[2], p[3]);
        out << line;
    };

    out << "# columns=t,p00,p01,p10,p11\n";
    GateSequence probe = seq;  // evolve piecewise through chopped segments
    const double total = seq.window_end() - seq.window_start();
    if (seq.phase_gate && seq.phase_gate->position == PhaseGate::Position::first) {
        GateSequence only_gate;
        only_gate.phase_gate = seq.phase_gate;
        only_gate.phase_gate->position = PhaseGate::Position::first;
        psi = evolve_sequence(psi, only_gate, err, settings, cfg);
    }
    emit(seq.window_start());
    for (std::size_t i = 0; i < seq.segments.size(); ++i) {
        PulseSegment seg = seq.segments[i];
        const double stretch = seg.timing_affected ? 1.0 + err.timing : 1.0;
        const double end = seg.t_start + stretch * seg.duration();
        const int pieces =
            std::max(1, static_cast<int>(std::lround(samples * seg.duration() / total)));
        for (int k = 0; k < pieces; ++k) {
            PulseSegment piece = seg;
            piece.timing_affected = false;
            piece.t_start = seg.t_start + (end - seg.t_start) * k / pieces;
            piece.t_end = seg.t_start + (end - seg.t_start) * (k + 1) / pieces;
            psi = evolve_segment(psi, piece, err, settings, cfg);
            emit(piece.t_end);
        }
    }
    if (seq.phase_gate && seq.phase_gate->position == PhaseGate::Position::last) {
        GateSequence only_gate;
        only_gate.phase_gate = seq.phase_gate;
        psi = evolve_sequence(psi, only_gate, err, settings, cfg);
        emit(seq.window_end());
    }
}

int run_simulate(const SequenceFlags& flags, const std::string& error_list,
                 const std::string& metric, int n_fock, double tol, int populations,
                 const std::string& dump_manifest, const std::string& out_path) {
    const GateSequence seq = flags.spec().build();
    const ErrorModel err = parse_error_list(error_list);

    IntegratorSettings settings;
    if (tol > 0.0) settings.rel_tol = tol;
    const HilbertConfig cfg{n_fock > 0 ? n_fock : default_n_fock(seq, err)};

    if (!dump_manifest.empty()) {
        if (dump_manifest == "-") {
            std::cout << sequence_manifest(seq);
        } else {
            std::ofstream mf(dump_manifest, std::ios::binary);
            if (!mf) throw std::runtime_error("cannot open " + dump_manifest);
            mf << sequence_manifest(seq);
        }
    }

    std::ofstream file_out;
    std::ostream* sink = &std::cout;
    if (!out_path.empty()) {
        file_out.open(out_path, std::ios::binary);
        if (!file_out) throw std::runtime_error("cannot open " + out_path);
        sink = &file_out;
    }

    std::cout << "sequence " << seq.label << " segments=" << seq.segments.size()
              << " theta_total=" << seq.theta_total << " n_fock=" << cfg.n_fock << '\n';

    if (metric == "gate" || metric == "both") {
        const auto block = vacuum_block_numeric(seq, err, settings, cfg);
        const FidelityReport report = gate_fidelity_block(target_xx(seq.theta_total), block);
        std::printf("gate fidelity   = %.12g\ngate infidelity = %.12g\n", report.fidelity,
                    report.infidelity);
    }
    if (metric == "state" || metric == "both") {
        Vector psi = Vector::Zero(cfg.total_dim());
        psi(0) = 1.0;
        psi = evolve_sequence(psi, seq, err, settings, cfg);
        Vector target = Vector::Zero(cfg.total_dim());
        target(0) = std::cos(seq.theta_total);
        target(3 * cfg.n_fock) = imag_unit * std::sin(seq.theta_total);
        const FidelityReport report = state_infidelity(target, psi);
        std::printf("state fidelity   = %.12g\nstate infidelity = %.12g\n", report.fidelity,
                    report.infidelity);
    }
    if (populations > 0) print_populations(seq, err, settings, cfg, populations, *sink);
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Composite amplitude-modulated Molmer-Sorensen gate simulator"};
    app.require_subcommand(1);

    int n_fock = 0;
    double tol = 0.0;
    int threads = 1;
    app.add_option("--n-fock", n_fock, "Fock truncation (default: per sequence kind)");
    app.add_option("--tol", tol, "integrator relative tolerance");
    app.add_option("--threads", threads, "worker threads for sweeps");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run one sequence under one error model");
    SequenceFlags sim_flags;
    sim_flags.attach(simulate);
    std::string error_list, metric = "state", dump_manifest, out_path;
    int populations = 0;
    simulate->add_option("--error", error_list, "channel=value list, e.g. coupling=0.1");
    simulate->add_option("--metric", metric, "state, gate or both")
        ->check(CLI::IsMember({"state", "gate", "both"}));
    simulate->add_option("--dump-manifest", dump_manifest, "write the segment manifest ('-' = stdout)")
        ->expected(0, 1)
        ->default_str("-");
    simulate->add_option("--populations", populations, "emit N population samples over time");
    simulate->add_option("--out", out_path, "population output file (default stdout)");

    // sweep1d / sweep2d
    auto* sweep1d = app.add_subcommand("sweep1d", "1D error sweep to CSV");
    auto* sweep2d = app.add_subcommand("sweep2d", "2D error grid to CSV");
    SequenceFlags sweep1_flags, sweep2_flags;
    sweep1_flags.attach(sweep1d);
    sweep2_flags.attach(sweep2d);
    std::string cfg1_path, cfg2_path, axis1_str, axis2_str, fixed1, fixed2, out1, out2;
    std::string metric1 = "state", metric2 = "state";
    sweep1d->add_option("--config", cfg1_path, "sweep config file");
    sweep1d->add_option("--axis", axis1_str, "channel:from:to:points");
    sweep1d->add_option("--fixed", fixed1, "baseline channel=value list");
    sweep1d->add_option("--metric", metric1)->check(CLI::IsMember({"state", "gate"}));
    sweep1d->add_option("--out", out1, "output CSV path");
    sweep2d->add_option("--config", cfg2_path, "sweep config file");
    sweep2d->add_option("--axis1", axis1_str, "channel:from:to:points");
    sweep2d->add_option("--axis2", axis2_str, "channel:from:to:points");
    sweep2d->add_option("--fixed", fixed2, "baseline channel=value list");
    sweep2d->add_option("--metric", metric2)->check(CLI::IsMember({"state", "gate"}));
    sweep2d->add_option("--out", out2, "output CSV path");

    // closure-phase
    auto* closure = app.add_subcommand("closure-phase",
                                       "zeta- that closes a pulse pair's displacement");
    std::string cl_shape = "sin32", cl_eps, cl_window;
    int cl_pulse = 1;
    double cl_g0 = 1.0;
    closure->add_option("--shape", cl_shape);
    closure->add_option("--eps", cl_eps, "detuning (default: shape preset)");
    closure->add_option("--pulse", cl_pulse, "pulse pair index, 1-based")->check(CLI::Range(1, 3));
    closure->add_option("--window", cl_window, "full sequence window (default: 3 bells)");
    closure->add_option("--g0", cl_g0, "coupling magnitude used for the probe");

    // calibrate
    auto* calibrate = app.add_subcommand("calibrate", "amplitude for a target rotation");
    std::string ca_shape = "const", ca_eps, ca_window, ca_theta = "pi/4";
    calibrate->add_option("--shape", ca_shape);
    calibrate->add_option("--eps", ca_eps, "detuning (default: shape preset)");
    calibrate->add_option("--window", ca_window, "integration window (default: shape preset)");
    calibrate->add_option("--theta", ca_theta, "target rotation angle");

    // manifest
    auto* manifest = app.add_subcommand("manifest", "print the segment manifest");
    SequenceFlags man_flags;
    man_flags.attach(manifest);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*simulate)
            return run_simulate(sim_flags, error_list, metric, n_fock, tol, populations,
                                simulate->count("--dump-manifest") ? dump_manifest : "",
                                out_path);

        if (*sweep1d || *sweep2d) {
            const bool two = static_cast<bool>(*sweep2d);
            const std::string& cfg_path = two ? cfg2_path : cfg1_path;
            SweepSpec spec;
            if (!cfg_path.empty()) {
                spec = parse_sweep_config_file(cfg_path);
            } else {
                if (axis1_str.empty())
                    throw std::invalid_argument("sweep: provide --config or an axis spec");
                spec.sequence = (two ? sweep2_flags : sweep1_flags).spec();
                spec.axis1 = [&] {
                    SweepSpec tmp;
                    std::istringstream is("format_version = 1\naxis1 = " + axis1_str + "\n");
                    tmp = parse_sweep_config(is);
                    return tmp.axis1;
                }();
                if (two) {
                    if (axis2_str.empty())
                        throw std::invalid_argument("sweep2d: --axis2 is required");
                    std::istringstream is("format_version = 1\naxis1 = " + axis2_str + "\n");
                    spec.axis2 = parse_sweep_config(is).axis1;
                }
                spec.fixed = parse_error_list(two ? fixed2 : fixed1);
                spec.metric = (two ? metric2 : metric1) == "gate" ? FidelityReport::Kind::gate
                                                                  : FidelityReport::Kind::state;
                spec.output_path = two ? out2 : out1;
            }
            if (n_fock > 0) spec.n_fock = n_fock;
            if (tol > 0.0) spec.settings.rel_tol = tol;
            if (threads > 1) spec.threads = threads;
            if (!(two ? out2 : out1).empty()) spec.output_path = two ? out2 : out1;

            const SweepResult result = run_sweep(spec);
            if (spec.output_path.empty()) {
                write_csv(result, std::cout);
            } else {
                write_csv(result, spec.output_path);
                std::cout << "wrote " << result.rows.size() << " rows to " << spec.output_path
                          << '\n';
            }
            return 0;
        }

        if (*closure) {
            const ShapeInfo& info = shape_preset(cl_shape);
            const double eps = cl_eps.empty() ? info.default_eps : parse_angle_expr(cl_eps);
            const auto window = cl_window.empty() ? default_window(cl_shape, "B2")
                                                  : parse_window_expr(cl_window);
            const double pair_span = (window.second - window.first) / 3.0;
            const double t0 = window.first + (cl_pulse - 1) * pair_span;
            const double tm = t0 + pair_span / 2.0;
            const double t1 = t0 + pair_span;
            const ClosureResult result =
                closure_phase(modulation_for(cl_shape, eps), imag_unit * cl_g0, eps, {t0, tm},
                              {tm, t1});
            std::printf("zeta_minus = %.6g\nresidual = %.3g (%s)\n", result.zeta_minus,
                        result.residual, result.exact ? "exact closure" : "approximate");
            return 0;
        }

        if (*calibrate) {
            const ShapeInfo& info = shape_preset(ca_shape);
            const double eps = ca_eps.empty() ? info.default_eps : parse_angle_expr(ca_eps);
            const auto window = ca_window.empty()
                                    ? std::pair<double, double>{0.0, info.single_window}
                                    : parse_window_expr(ca_window);
            const double g = calibrate_amplitude(modulation_for(ca_shape, eps), eps, window,
                                                 parse_angle_expr(ca_theta));
            std::printf("|g0| = %.6g\n", g);
            return 0;
        }

        if (*manifest) {
            std::cout << sequence_manifest(man_flags.spec().build());
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace msgate
