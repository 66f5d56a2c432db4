#ifndef MSGATE_HILBERT_HPP
#define MSGATE_HILBERT_HPP

#include <complex>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

namespace msgate {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

constexpr Complex imag_unit{0.0, 1.0};

// Composite space: qubit1 (x) qubit2 (x) truncated Fock, in that fixed order.
struct HilbertConfig {
    int n_fock = 14;

    int total_dim() const { return 4 * n_fock; }

    void validate() const {
        if (n_fock < 2) throw std::invalid_argument("HilbertConfig: n_fock must be >= 2");
    }
};

enum class Slot { qubit1, qubit2, motion };

// Kronecker product as an expression-friendly free function.
template <typename DerivedA, typename DerivedB>
Matrix kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// sigma(phi) = sigma+ e^{-i phi} + sigma- e^{+i phi} = cos(phi) sx + sin(phi) sy
Eigen::Matrix2cd sigma_phase(double phi);

Eigen::Matrix2cd pauli_x();
Eigen::Matrix2cd pauli_y();
Eigen::Matrix2cd pauli_z();

// Truncated annihilation/creation pair: a|n> = sqrt(n)|n-1> on n_fock levels.
std::pair<Matrix, Matrix> ladder_ops(const HilbertConfig& cfg);

// Kronecker embedding with identities on the other two slots.
Matrix embed(const Matrix& op, Slot slot, const HilbertConfig& cfg);

// Dense matrix exponential (scaling-and-squaring).  Throws on non-finite input.
Matrix matrix_exp(const Matrix& op);

}  // namespace msgate

#endif
