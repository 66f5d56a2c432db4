#include "msgate/presets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace msgate {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;
}  // namespace

double PhysicalPreset::coupling(int gate_index) const {
    return rabi_per_gate.at(static_cast<std::size_t>(gate_index)) * eta / 2.0;
}

double PhysicalPreset::total_duration() const {
    return segment_duration * static_cast<double>(rabi_per_gate.size());
}

PhysicalPreset yb171_preset() {
    PhysicalPreset p;
    p.eta = 0.065;
    const double omega14 = two_pi * 214.528e3;  // rad/s
    const double omega56 = two_pi * 151.694e3;
    p.rabi_per_gate = {omega14, omega14, omega14, omega14, omega56, omega56};
    p.segment_duration = 500e-6 / 6.0;  // six gates over 500 us
    p.detuning = two_pi * 2.0e3;        // eps/2pi = 1/tau_g = 2 kHz
    p.stark_limits = {262.84, 262.84, 262.84, 262.84, 185.85, 185.85};
    p.label = "yb171";
    p.hyperfine_splitting_hz = 12.642812e9;  // metadata only
    p.qubit_states = "|F=0,mF=0> and |F=0,mF=1> (as printed in the source)";
    return p;
}

NaturalConfig to_natural_units(const PhysicalPreset& preset) {
    const std::size_t gates = preset.rabi_per_gate.size();
    if (gates != 6) throw std::invalid_argument("to_natural_units: expected six gates");

    NaturalConfig nat;
    nat.time_scale = preset.total_duration() / two_pi;  // seconds per natural unit
    nat.eta = preset.eta;

    const double theta = pi / 4.0;
    const double phi = composite_phi(theta);
    const double eps_nat = preset.detuning * nat.time_scale;
    const double w = two_pi / static_cast<double>(gates);
    const Modulation mod = modulation_for("sin32", eps_nat);

    // B2 plan: (pi/2)_{3phi}, (pi/2)_phi, (theta)_0 in time order, F(2phi) first.
    const double zeta2_by_pair[3] = {3.0 * phi, phi, 0.0};

    GateSequence seq;
    seq.label = "B2";
    seq.theta_total = theta;
    seq.phase_gate = PhaseGate{PhaseGate::Position::first, 2, 2.0 * phi};

    const double ratio0 = preset.stark_limits.at(0) / preset.coupling(0);
    nat.stark_fraction = ratio0;

    for (std::size_t i = 0; i < gates; ++i) {
        PulseSegment seg;
        seg.modulation = mod;
        seg.eps = eps_nat;
        seg.t_start = static_cast<double>(i) * w;
        seg.t_end = static_cast<double>(i + 1) * w;
        seg.zeta_plus = {0.0, zeta2_by_pair[i / 2]};
        seg.g0 = imag_unit * preset.coupling(static_cast<int>(i)) * nat.time_scale;
        seg.stark_coef = (preset.stark_limits.at(i) / preset.coupling(static_cast<int>(i))) /
                         ratio0;
        seq.segments.push_back(seg);
    }
    for (int k = 0; k < 3; ++k)
        seq.segments[2 * k + 1].zeta_minus =
            closure_for_pair(seq.segments[2 * k], seq.segments[2 * k + 1]).zeta_minus;
    seq.segments.back().timing_affected = true;

    nat.sequence = seq;
    return nat;
}

PhysicalPreset to_si_units(const NaturalConfig& natural) {
    const auto& segs = natural.sequence.segments;
    if (segs.empty()) throw std::invalid_argument("to_si_units: empty sequence");

    PhysicalPreset p;
    p.eta = natural.eta;
    p.label = "from_natural";
    p.segment_duration = segs.front().duration() * natural.time_scale;
    p.detuning = segs.front().eps / natural.time_scale;
    for (const PulseSegment& seg : segs) {
        const double g_si = std::abs(seg.g0) / natural.time_scale;
        p.rabi_per_gate.push_back(2.0 * g_si / natural.eta);
        p.stark_limits.push_back(natural.stark_fraction * seg.stark_coef * g_si);
    }
    return p;
}

}  // namespace msgate
