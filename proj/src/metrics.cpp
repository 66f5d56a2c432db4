#include "msgate/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace msgate {

Eigen::Matrix4cd vacuum_block(const Matrix& u_full, const HilbertConfig& cfg) {
    cfg.validate();
    if (u_full.rows() != cfg.total_dim() || u_full.cols() != cfg.total_dim())
        throw std::invalid_argument("vacuum_block: operator dimension mismatch");
    Eigen::Matrix4cd block;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) block(i, j) = u_full(i * cfg.n_fock, j * cfg.n_fock);
    return block;
}

FidelityReport gate_fidelity_block(const Eigen::Matrix4cd& u_target_spin,
                                   const Eigen::Matrix4cd& block) {
    const double fidelity = std::abs((u_target_spin.adjoint() * block).trace()) / 4.0;
    return {fidelity, 1.0 - fidelity, FidelityReport::Kind::gate, 4};
}

FidelityReport gate_fidelity(const Eigen::Matrix4cd& u_target_spin, const Matrix& u_full,
                             const HilbertConfig& cfg) {
    return gate_fidelity_block(u_target_spin, vacuum_block(u_full, cfg));
}

FidelityReport state_infidelity(const Vector& psi_target, const Vector& psi) {
    if (psi_target.size() != psi.size())
        throw std::invalid_argument("state_infidelity: dimension mismatch");
    const double overlap = std::norm(Complex(psi_target.dot(psi)));
    const double fidelity = std::min(overlap, 1.0 + 1e-12);
    return {fidelity, 1.0 - fidelity, FidelityReport::Kind::state, 0};
}

Vector bell_target(const HilbertConfig& cfg) {
    cfg.validate();
    Vector psi = Vector::Zero(cfg.total_dim());
    psi(0) = 1.0 / std::sqrt(2.0);                        // |00> (x) |0m>
    psi(3 * cfg.n_fock) = imag_unit / std::sqrt(2.0);     // |11> (x) |0m>
    return psi;
}

Eigen::Matrix4cd target_xx(double theta) {
    const Eigen::Matrix4cd xx = kron(pauli_x(), pauli_x());
    return std::cos(theta) * Eigen::Matrix4cd::Identity() + imag_unit * std::sin(theta) * xx;
}

}  // namespace msgate
