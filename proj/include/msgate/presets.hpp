#ifndef MSGATE_PRESETS_HPP
#define MSGATE_PRESETS_HPP

#include <string>
#include <vector>

#include "msgate/composite.hpp"

namespace msgate {

// SI-unit description of a physical gate sequence (rates in rad/s, times in s).
struct PhysicalPreset {
    double eta = 0.0;                    // Lamb-Dicke parameter
    std::vector<double> rabi_per_gate;   // Omega_i, rad/s
    double segment_duration = 0.0;       // s
    double detuning = 0.0;               // eps, rad/s
    std::vector<double> stark_limits;    // tolerable lambda_i, as labeled in the source
    std::string label;
    double hyperfine_splitting_hz = 0.0; // metadata only; never enters the dynamics
    std::string qubit_states;            // metadata only

    double coupling(int gate_index) const;  // g_i = Omega_i eta / 2, rad/s
    double total_duration() const;
};

// 171Yb+ worked example: eta = 0.065, six 83.33 us segments, eps/2pi = 2 kHz,
// Omega/2pi = 214.528 kHz (gates 1-4) and 151.694 kHz (gates 5-6).
PhysicalPreset yb171_preset();

// Dimensionless configuration: full sequence window rescaled to [0, 2pi],
// eps = 1, amplitudes scaled inversely with time.
struct NaturalConfig {
    GateSequence sequence;
    double time_scale = 0.0;      // seconds per natural time unit
    double eta = 0.0;
    double stark_fraction = 0.0;  // lambda_i / g_i carried by the preset
};

NaturalConfig to_natural_units(const PhysicalPreset& preset);

// Inverse map; reproduces the preset's rates from a natural configuration.
PhysicalPreset to_si_units(const NaturalConfig& natural);

}  // namespace msgate

#endif
