#ifndef MSGATE_DYNAMICS_HPP
#define MSGATE_DYNAMICS_HPP

#include "msgate/composite.hpp"
#include "msgate/hilbert.hpp"
#include "msgate/modulation.hpp"

namespace msgate {

// Fractional control-parameter errors; all zero reproduces ideal dynamics.
struct ErrorModel {
    double timing = 0.0;           // stretches the last physical segment only
    double detuning_static = 0.0;  // delta_1
    double drift_rate = 0.0;       // delta_2, global clock
    double coupling = 0.0;         // gamma, all segments
    double stark_fraction = 0.0;   // s: peak lambda = s * stark_coef * |g_i|
};

struct IntegratorSettings {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 0.25;
    int guard_band = 4;  // top Fock levels excluded from accuracy claims

    void validate() const;
};

// H(t) = lambda(t) S_z + sum_k sigma(zeta_k+) (x) [g_eff(t) a† e^{i eps_eff(t) t - i zeta-} + h.c.]
// with g_eff = g(t)(1+gamma), eps_eff = eps(1 + delta1 + delta2 t) and
// lambda(t) = s * stark_coef * |g(t)|^2 / |g0|.  Multi-tone segments expand
// the bracket as the tone sum.
Matrix build_hamiltonian(const PulseSegment& seg, const ErrorModel& err, double t,
                         const HilbertConfig& cfg);

// Integrates i dpsi/dt = H(t) psi over the segment window with an adaptive
// Dormand-Prince 5(4) stepper.  When the segment is timing_affected the
// duration is stretched by (1 + timing); the envelope still runs on the
// global clock, as a shutter would act.
Vector evolve_segment(const Vector& psi, const PulseSegment& seg, const ErrorModel& err,
                      const IntegratorSettings& settings, const HilbertConfig& cfg);

// Folds evolve_segment over the physical segments and applies the phase gate
// at its declared position.  The global clock runs continuously so drift
// accumulates across the whole sequence.  A trailing phase gate's angle is
// scaled by (1 + timing), matching the B1 shutter model.
Vector evolve_sequence(const Vector& psi, const GateSequence& seq, const ErrorModel& err,
                       const IntegratorSettings& settings, const HilbertConfig& cfg);

// Column-by-column evolution of every basis state.
Matrix propagator_numeric(const GateSequence& seq, const ErrorModel& err,
                          const IntegratorSettings& settings, const HilbertConfig& cfg);

// Motional-vacuum block <i,0m|U|j,0m> from evolving the four spin basis
// states; all the gate-fidelity path needs.
Eigen::Matrix4cd vacuum_block_numeric(const GateSequence& seq, const ErrorModel& err,
                                      const IntegratorSettings& settings,
                                      const HilbertConfig& cfg);

// Suggested truncation: 14 for a lone gate, 35 for composite sequences or
// any run with a Stark term (pair-intermediate displacements are large).
int default_n_fock(const GateSequence& seq, const ErrorModel& err);

}  // namespace msgate

#endif
