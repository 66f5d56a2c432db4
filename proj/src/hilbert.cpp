#include "msgate/hilbert.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace msgate {

Eigen::Matrix2cd pauli_x() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}

Eigen::Matrix2cd pauli_y() {
    Eigen::Matrix2cd m;
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Eigen::Matrix2cd pauli_z() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}

Eigen::Matrix2cd sigma_phase(double phi) {
    Eigen::Matrix2cd m;
    m << 0, std::exp(Complex(0, -phi)), std::exp(Complex(0, phi)), 0;
    return m;
}

std::pair<Matrix, Matrix> ladder_ops(const HilbertConfig& cfg) {
    cfg.validate();
    Matrix a = Matrix::Zero(cfg.n_fock, cfg.n_fock);
    for (int n = 1; n < cfg.n_fock; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return {a, a.adjoint()};
}

Matrix embed(const Matrix& op, Slot slot, const HilbertConfig& cfg) {
    cfg.validate();
    const int expected = slot == Slot::motion ? cfg.n_fock : 2;
    if (op.rows() != expected || op.cols() != expected)
        throw std::invalid_argument("embed: operator dimension does not match slot");

    const Matrix id2 = Matrix::Identity(2, 2);
    const Matrix idm = Matrix::Identity(cfg.n_fock, cfg.n_fock);
    switch (slot) {
        case Slot::qubit1: return kron(kron(op, id2), idm);
        case Slot::qubit2: return kron(kron(id2, op), idm);
        case Slot::motion: return kron(kron(id2, id2), op);
    }
    throw std::invalid_argument("embed: bad slot");
}

Matrix matrix_exp(const Matrix& op) {
    if (op.rows() != op.cols()) throw std::invalid_argument("matrix_exp: non-square input");
    if (!op.allFinite()) throw std::invalid_argument("matrix_exp: non-finite entries");
    return op.exp();
}

}  // namespace msgate
