#ifndef MSGATE_COMPOSITE_HPP
#define MSGATE_COMPOSITE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msgate/analytic.hpp"
#include "msgate/modulation.hpp"

namespace msgate {

struct LogicalGate {
    double theta;  // > 0
    double phi;    // zeta2+ phase
};

// Instantaneous single-qubit z rotation F(phi) = exp(-i phi sigma_z),
// realized as a phase jump; contributes no duration.
struct PhaseGate {
    enum class Position { first, last };
    Position position = Position::last;
    int target_qubit = 2;
    double phi = 0.0;
};

struct GateSequence {
    std::vector<PulseSegment> segments;
    std::optional<PhaseGate> phase_gate;
    double theta_total = 0.0;
    std::string label;  // "single", "B1", "B2"

    double window_start() const { return segments.empty() ? 0.0 : segments.front().t_start; }
    double window_end() const { return segments.empty() ? 0.0 : segments.back().t_end; }
};

// phi = arccos(-theta/pi); requires |theta/pi| <= 1.
double composite_phi(double theta);

// One calibrated MS gate over [window.first, window.second].
GateSequence build_single(double theta, std::string_view shape, double eps,
                          std::pair<double, double> window);

// B1(theta) = F(-2phi) (pi/2)_{3phi} (pi/2)_phi (theta)_0, phase gate
// physically last.  The window is divided into six equal physical segments;
// each logical gate maps to two segments rotating theta_k/2 each, with the
// pair displacement closed by the second segment's zeta- phase.
GateSequence build_B1(double theta, std::string_view shape, double eps,
                      std::pair<double, double> window);

// B2(theta) = (theta)_0 (pi/2)_phi (pi/2)_{3phi} F(2phi), phase gate
// physically first and the rotating gate last.
GateSequence build_B2(double theta, std::string_view shape, double eps,
                      std::pair<double, double> window);

GateSequence build_sequence(std::string_view kind, double theta, std::string_view shape,
                            double eps, std::pair<double, double> window);

// Natural full-sequence window for a named shape: three envelope bells for
// B1/B2, the single-gate interval otherwise.
std::pair<double, double> default_window(std::string_view shape, std::string_view kind);

enum class ErrorChannelKind { coupling };

// Max-norm of the l-th central finite difference (step 1e-3, 5-point
// stencil) of U^(N)(delta) - U(theta) at delta = 0, evaluated on the
// rotational component with displacements analytically closed.
double broadband_residual(const GateSequence& seq, ErrorChannelKind channel, int order);

// Spin-space (4x4) rotational propagator of the sequence at a given
// coupling error, displacements closed analytically.
Eigen::Matrix4cd rotational_propagator(const GateSequence& seq, double coupling_error);

// Human-readable manifest: one line per segment
// (index, t_start, t_end, |g0|, eps, zeta1+, zeta2+, zeta-, stark_coef).
std::string sequence_manifest(const GateSequence& seq);

}  // namespace msgate

#endif
