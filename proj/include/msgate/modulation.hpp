#ifndef MSGATE_MODULATION_HPP
#define MSGATE_MODULATION_HPP

#include <array>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "msgate/hilbert.hpp"

namespace msgate {

struct ConstantMod {};

// g0 * sin(m t)^l * cos(n t)^p on the global sequence clock.
struct SineCosineMod {
    double m = 1.0;
    int l = 0;
    double n = 0.0;
    int p = 0;
};

struct Tone {
    int index;         // j, multiplies the detuning
    double amplitude;  // relative amplitude c_j (detuning-proportional by convention)
};

struct MultiToneMod {
    std::vector<Tone> tones;
};

using Modulation = std::variant<ConstantMod, SineCosineMod, MultiToneMod>;

// Real shape factor of a scalar envelope at global time t (Constant -> 1).
// Throws UnsupportedModulationError for MultiTone.
double envelope_shape(const Modulation& mod, double t);

// Full coupling value g0 * shape(t).  Throws UnsupportedModulationError for
// MultiTone: tones enter the Hamiltonian with per-tone phase factors, not as
// a single scalar envelope.
Complex eval_envelope(const Modulation& mod, Complex g0, double eps, double t);

// Detuning-optimized two-tone set: {(1, -0.1444 eps), (2, 0.2888 eps)}.
std::vector<Tone> two_tone_amplitudes(double eps);

// One physical MS pulse.  The envelope clock is the global sequence time.
struct PulseSegment {
    Modulation modulation = ConstantMod{};
    Complex g0{0.0, 0.0};  // effective coupling amplitude, i*Omega*eta/2 convention
    double eps = 1.0;
    double t_start = 0.0;
    double t_end = 0.0;
    std::array<double, 2> zeta_plus{0.0, 0.0};  // zeta1+ stays 0; rotation set by zeta2+
    double zeta_minus = 0.0;                     // common to both ions
    double stark_coef = 1.0;   // per-segment Stark susceptibility relative to the
                               // error model's stark fraction (see dynamics)
    bool timing_affected = false;  // physically-last gate: timing error stretches it

    double duration() const { return t_end - t_start; }
    void validate() const;
};

// Named envelope presets exposed through the CLI vocabulary.
struct ShapeInfo {
    std::string name;
    Modulation modulation;     // for "twotone" the tones are for eps = 1
    double default_eps;        // detuning used in the paper's figures
    double single_window;      // natural single-gate interval [0, single_window]
    double bell_window;        // one pulse of the envelope; a sequence pair spans it
    bool multitone;
};

const ShapeInfo& shape_preset(std::string_view name);
std::vector<std::string> shape_names();

// Modulation for a named shape at a given detuning (rebuilds tone amplitudes).
Modulation modulation_for(std::string_view shape, double eps);

}  // namespace msgate

#endif
