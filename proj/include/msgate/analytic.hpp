#ifndef MSGATE_ANALYTIC_HPP
#define MSGATE_ANALYTIC_HPP

#include <array>
#include <span>
#include <utility>

#include "msgate/hilbert.hpp"
#include "msgate/modulation.hpp"

namespace msgate {

struct AlphaTheta {
    Complex alpha{0.0, 0.0};
    double theta = 0.0;
};

// alpha(T1,T2) = -i Int_{T1}^{T2} g(tau) exp(i eps tau - i zeta-) dtau
// by adaptive quadrature (abs tol 1e-12).  Scalar envelopes only.
Complex alpha_numeric(const PulseSegment& seg, double T1, double T2);

// Tone-sum of the displacement integral with eps -> j*eps per tone.
Complex alpha_multitone(std::span<const Tone> tones, Complex g0, double eps,
                        double zeta_minus, double T1, double T2);

// theta(T1,T2) = 2 Int Int_{tau1<tau2} g(tau1) g(tau2) sin(eps (tau1-tau2))
// by nested adaptive quadrature (abs tol 1e-10).  The real part is returned;
// an imaginary residue above 1e-10 raises InternalConsistencyError.
double theta_numeric(const PulseSegment& seg, double T1, double T2);

// Rotation angle for a multi-tone drive: -2 Int Int_{t2<t1} Im(c*(t1) c(t2))
// with c(t) = sum_j g0 c_j e^{i j eps t}.  Reduces to theta_numeric for a
// single tone with purely imaginary coupling.
double theta_multitone(std::span<const Tone> tones, Complex g0, double eps,
                       double T1, double T2);

// Rotation angle of one segment over its own window, dispatching on the
// modulation kind.
double segment_theta(const PulseSegment& seg);

// Displacement of one segment over its own window (zeta- included).
Complex segment_alpha(const PulseSegment& seg);

enum class ClosedFormShape { sin14, sincos, sin32 };

// Closed-form alpha/theta transcribed from the three analytic modulations,
// all sideband phases zero.  Valid on [0,4pi] for sin14, [0,2pi] otherwise.
// Throws SingularParameterError at detunings where denominators vanish:
// {0, +-1/2} for sin14, {0, +-1, +-2} for sincos, {0, +-3} for sin32.
AlphaTheta closed_form_alpha_theta(ClosedFormShape shape, Complex g0, double eps, double t);

ClosedFormShape closed_form_shape(std::string_view name);

struct ConstantRelations {
    double eps;
    double tau_g;
};

// eps = 4 g, tau_g = 2 pi / eps for the standard constant-coupling gate.
ConstantRelations constant_relations(double g_mag);

// D(alpha) = exp( sum_k sigma(zeta_k+) (alpha_k a† - alpha_k* a) )
Matrix displacement_matrix(const std::array<Complex, 2>& alpha_per_ion,
                           const std::array<double, 2>& zeta_plus,
                           const HilbertConfig& cfg);

// U_MS = D(alpha) exp(i theta sigma(zeta1+) sigma(zeta2+)).
// The exact propagator carries an extra global phase e^{i theta} relative to
// this form (the identity part of the collective-spin square); callers that
// compare against time integration must multiply it back in.
Matrix ms_propagator(const std::array<Complex, 2>& alpha_per_ion, double theta,
                     const std::array<double, 2>& zeta_plus, const HilbertConfig& cfg);

struct ClosureResult {
    double zeta_minus;  // in (-pi, pi]
    double residual;    // |beta + e^{-i zeta} alpha_second(0)|
    bool exact;         // residual < 1e-9 * max(1, |beta|)
};

// zeta- phase for the second half of a pulse pair such that the pair's
// displacement closes.  Coarse 720-point scan over (-pi, pi] refined by
// golden-section search; throws NoClosureError when the best relative
// residual exceeds 1e-6.
ClosureResult closure_phase(const Modulation& mod, Complex g0, double eps,
                            std::pair<double, double> first_half,
                            std::pair<double, double> second_half);

// Same closure solve for two independently parameterized halves.
ClosureResult closure_for_pair(const PulseSegment& first, const PulseSegment& second);

// |g0| such that theta over the window equals theta_target (theta is
// quadratic in the amplitude).  Throws UncalibratableError when the
// unit-amplitude rotation is not positive.
double calibrate_amplitude(const Modulation& mod, double eps,
                           std::pair<double, double> window, double theta_target);

}  // namespace msgate

#endif
