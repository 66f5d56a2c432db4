#include "msgate/composite.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "msgate/errors.hpp"
#include "msgate/metrics.hpp"

namespace msgate {

namespace {

constexpr double pi = std::numbers::pi;

// Rotation factor e^{i theta sigma(0) sigma(phi)} on the two-qubit space.
Eigen::Matrix4cd rotation_factor(double theta, double phi) {
    const Eigen::Matrix4cd spin_pair = kron(sigma_phase(0.0), sigma_phase(phi));
    return std::cos(theta) * Eigen::Matrix4cd::Identity() +
           imag_unit * std::sin(theta) * spin_pair;
}

Eigen::Matrix4cd phase_gate_matrix(const PhaseGate& gate) {
    const Eigen::Matrix2cd f =
        (Eigen::Matrix2cd() << std::exp(-imag_unit * gate.phi), 0.0, 0.0,
         std::exp(imag_unit * gate.phi))
            .finished();
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    return gate.target_qubit == 1 ? Eigen::Matrix4cd(kron(f, id))
                                  : Eigen::Matrix4cd(kron(id, f));
}

struct BuildPlan {
    std::vector<LogicalGate> in_time_order;
    PhaseGate phase_gate;
    std::string label;
};

GateSequence build_composite(const BuildPlan& plan, double theta, std::string_view shape,
                             double eps, std::pair<double, double> window) {
    const Modulation mod = modulation_for(shape, eps);
    const double span = window.second - window.first;
    if (span <= 0.0) throw std::invalid_argument("build: empty sequence window");
    const double w = span / 6.0;

    GateSequence seq;
    seq.label = plan.label;
    seq.theta_total = theta;
    seq.phase_gate = plan.phase_gate;

    for (int k = 0; k < 3; ++k) {
        const LogicalGate& gate = plan.in_time_order[k];
        for (int half = 0; half < 2; ++half) {
            const int i = 2 * k + half;
            PulseSegment seg;
            seg.modulation = mod;
            seg.eps = eps;
            seg.t_start = window.first + i * w;
            seg.t_end = window.first + (i + 1) * w;
            seg.zeta_plus = {0.0, gate.phi};
            const double g_mag = calibrate_amplitude(mod, eps, {seg.t_start, seg.t_end},
                                                     gate.theta / 2.0);
            seg.g0 = imag_unit * g_mag;
            seq.segments.push_back(seg);
        }
        PulseSegment& first = seq.segments[2 * k];
        PulseSegment& second = seq.segments[2 * k + 1];
        second.zeta_minus = closure_for_pair(first, second).zeta_minus;
    }
    seq.segments.back().timing_affected = true;
    return seq;
}

}  // namespace

double composite_phi(double theta) {
    const double x = -theta / pi;
    if (std::abs(x) > 1.0)
        throw std::invalid_argument("composite_phi: |theta/pi| must not exceed 1");
    return std::acos(x);
}

GateSequence build_single(double theta, std::string_view shape, double eps,
                          std::pair<double, double> window) {
    if (theta <= 0.0) throw std::invalid_argument("build_single: theta must be > 0");
    const Modulation mod = modulation_for(shape, eps);
    const double g_mag = calibrate_amplitude(mod, eps, window, theta);

    PulseSegment seg;
    seg.modulation = mod;
    seg.g0 = imag_unit * g_mag;
    seg.eps = eps;
    seg.t_start = window.first;
    seg.t_end = window.second;
    seg.timing_affected = true;

    GateSequence seq;
    seq.segments.push_back(seg);
    seq.theta_total = theta;
    seq.label = "single";
    return seq;
}

GateSequence build_B1(double theta, std::string_view shape, double eps,
                      std::pair<double, double> window) {
    if (theta <= 0.0) throw std::invalid_argument("build_B1: theta must be > 0");
    const double phi = composite_phi(theta);
    BuildPlan plan;
    plan.in_time_order = {{theta, 0.0}, {pi / 2.0, phi}, {pi / 2.0, 3.0 * phi}};
    plan.phase_gate = {PhaseGate::Position::last, 2, -2.0 * phi};
    plan.label = "B1";
    return build_composite(plan, theta, shape, eps, window);
}

GateSequence build_B2(double theta, std::string_view shape, double eps,
                      std::pair<double, double> window) {
    if (theta <= 0.0) throw std::invalid_argument("build_B2: theta must be > 0");
    const double phi = composite_phi(theta);
    BuildPlan plan;
    plan.in_time_order = {{pi / 2.0, 3.0 * phi}, {pi / 2.0, phi}, {theta, 0.0}};
    plan.phase_gate = {PhaseGate::Position::first, 2, 2.0 * phi};
    plan.label = "B2";
    return build_composite(plan, theta, shape, eps, window);
}

GateSequence build_sequence(std::string_view kind, double theta, std::string_view shape,
                            double eps, std::pair<double, double> window) {
    if (kind == "single") return build_single(theta, shape, eps, window);
    if (kind == "B1") return build_B1(theta, shape, eps, window);
    if (kind == "B2") return build_B2(theta, shape, eps, window);
    throw std::invalid_argument("build_sequence: unknown sequence kind " + std::string(kind));
}

std::pair<double, double> default_window(std::string_view shape, std::string_view kind) {
    const ShapeInfo& info = shape_preset(shape);
    if (kind == "single") return {0.0, info.single_window};
    return {0.0, 3.0 * info.bell_window};
}

namespace {

Eigen::Matrix4cd rotational_from_thetas(const GateSequence& seq,
                                        const std::vector<double>& thetas,
                                        double coupling_error) {
    const double scale = (1.0 + coupling_error) * (1.0 + coupling_error);
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
    if (seq.phase_gate && seq.phase_gate->position == PhaseGate::Position::first)
        u = phase_gate_matrix(*seq.phase_gate);
    for (std::size_t i = 0; i < seq.segments.size(); ++i)
        u = rotation_factor(scale * thetas[i], seq.segments[i].zeta_plus[1]) * u;
    if (seq.phase_gate && seq.phase_gate->position == PhaseGate::Position::last)
        u = phase_gate_matrix(*seq.phase_gate) * u;
    return u;
}

std::vector<double> segment_thetas(const GateSequence& seq) {
    std::vector<double> thetas;
    thetas.reserve(seq.segments.size());
    for (const PulseSegment& seg : seq.segments) thetas.push_back(segment_theta(seg));
    return thetas;
}

}  // namespace

Eigen::Matrix4cd rotational_propagator(const GateSequence& seq, double coupling_error) {
    return rotational_from_thetas(seq, segment_thetas(seq), coupling_error);
}

double broadband_residual(const GateSequence& seq, ErrorChannelKind channel, int order) {
    if (channel != ErrorChannelKind::coupling)
        throw std::invalid_argument("broadband_residual: unsupported channel");
    if (order < 0 || order > 2)
        throw std::invalid_argument("broadband_residual: order must be 0, 1 or 2");

    const Eigen::Matrix4cd target = target_xx(seq.theta_total);
    const std::vector<double> thetas = segment_thetas(seq);
    const auto deviation = [&](double delta) -> Eigen::Matrix4cd {
        return rotational_from_thetas(seq, thetas, delta) - target;
    };

    const double h = 1e-3;
    Eigen::Matrix4cd stencil;
    switch (order) {
        case 0: stencil = deviation(0.0); break;
        case 1:
            stencil = (-deviation(2 * h) + 8.0 * deviation(h) - 8.0 * deviation(-h) +
                       deviation(-2 * h)) /
                      (12.0 * h);
            break;
        default:
            stencil = (-deviation(2 * h) + 16.0 * deviation(h) - 30.0 * deviation(0.0) +
                       16.0 * deviation(-h) - deviation(-2 * h)) /
                      (12.0 * h * h);
            break;
    }
    return stencil.cwiseAbs().maxCoeff();
}

std::string sequence_manifest(const GateSequence& seq) {
    std::string out =
        "# index t_start t_end |g0| eps zeta1+ zeta2+ zeta- stark_coef\n";
    char line[256];
    int index = 0;
    for (const PulseSegment& seg : seq.segments) {
        std::snprintf(line, sizeof line,
                      "%d %.12g %.12g %.12g %.12g %.12g %.12g %.12g %.12g\n", index++,
                      seg.t_start, seg.t_end, std::abs(seg.g0), seg.eps, seg.zeta_plus[0],
                      seg.zeta_plus[1], seg.zeta_minus, seg.stark_coef);
        out += line;
    }
    if (seq.phase_gate) {
        std::snprintf(line, sizeof line, "# phase_gate position=%s qubit=%d phi=%.12g\n",
                      seq.phase_gate->position == PhaseGate::Position::first ? "first" : "last",
                      seq.phase_gate->target_qubit, seq.phase_gate->phi);
        out += line;
    }
    return out;
}

}  // namespace msgate
