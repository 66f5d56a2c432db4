#ifndef MSGATE_METRICS_HPP
#define MSGATE_METRICS_HPP

#include "msgate/hilbert.hpp"

namespace msgate {

struct FidelityReport {
    enum class Kind { gate, state };
    double fidelity = 0.0;
    double infidelity = 0.0;
    Kind kind = Kind::state;
    int K = 0;  // state count entering the gate-fidelity normalization
};

// F = |Tr(U_target† B)| / 4 with B the motional-vacuum block of U_full.
// The magnitude makes the report global-phase invariant.
FidelityReport gate_fidelity(const Eigen::Matrix4cd& u_target_spin, const Matrix& u_full,
                             const HilbertConfig& cfg);

// Same metric when the 4x4 vacuum block is already available.
FidelityReport gate_fidelity_block(const Eigen::Matrix4cd& u_target_spin,
                                   const Eigen::Matrix4cd& vacuum_block);

// I_s = 1 - |<psi_target|psi>|^2.
FidelityReport state_infidelity(const Vector& psi_target, const Vector& psi);

// (|00> + i|11>)/sqrt(2) (x) |0_m>.
Vector bell_target(const HilbertConfig& cfg);

// exp(i theta sx sx) on the two-qubit space.
Eigen::Matrix4cd target_xx(double theta);

// Vacuum block of a full-space operator.
Eigen::Matrix4cd vacuum_block(const Matrix& u_full, const HilbertConfig& cfg);

}  // namespace msgate

#endif
