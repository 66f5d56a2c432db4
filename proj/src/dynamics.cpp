#include "msgate/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <variant>

#include "msgate/errors.hpp"

namespace msgate {

void IntegratorSettings::validate() const {
    if (rel_tol < 1e-14 || rel_tol > 1e-6 || abs_tol < 1e-14 || abs_tol > 1e-6)
        throw std::invalid_argument("IntegratorSettings: tolerances must lie in [1e-14, 1e-6]");
    if (max_step <= 0.0) throw std::invalid_argument("IntegratorSettings: max_step must be > 0");
    if (guard_band < 2) throw std::invalid_argument("IntegratorSettings: guard_band must be >= 2");
}

namespace {

Complex cis(double x) { return {std::cos(x), std::sin(x)}; }

// Per-segment operator cache and time-dependent coefficients.
struct SegmentEngine {
    Matrix raise;         // sum_k sigma(zeta_k+) (x) a†
    Matrix lower;         // adjoint
    Eigen::VectorXd sz;   // diagonal of S_z on the full space
    const PulseSegment* seg;
    const ErrorModel* err;
    double stark_scale;   // s * stark_coef / |g0|, 0 when unused
    double stark_norm;    // multi-tone normalizer, 1 for scalar envelopes

    SegmentEngine(const PulseSegment& s, const ErrorModel& e, const HilbertConfig& cfg)
        : seg(&s), err(&e) {
        s.validate();
        cfg.validate();
        const auto [a, ad] = ladder_ops(cfg);
        const Matrix id2 = Matrix::Identity(2, 2);
        const Matrix w4 = kron(sigma_phase(s.zeta_plus[0]), id2) +
                          kron(id2, sigma_phase(s.zeta_plus[1]));
        raise = kron(w4, ad);
        lower = raise.adjoint();

        sz.resize(cfg.total_dim());
        for (int q1 = 0; q1 < 2; ++q1)
            for (int q2 = 0; q2 < 2; ++q2) {
                const double z = (q1 == 0 ? 1.0 : -1.0) + (q2 == 0 ? 1.0 : -1.0);
                sz.segment((q1 * 2 + q2) * cfg.n_fock, cfg.n_fock).setConstant(z);
            }

        const double g_mag = std::abs(s.g0);
        stark_scale = (e.stark_fraction != 0.0 && g_mag > 0.0)
                          ? e.stark_fraction * s.stark_coef / g_mag
                          : 0.0;
        stark_norm = 1.0;
        if (const auto* mt = std::get_if<MultiToneMod>(&s.modulation); mt && g_mag > 0.0) {
            double amp_sum = 0.0;
            for (const Tone& tone : mt->tones) amp_sum += std::abs(g_mag * tone.amplitude);
            stark_norm = amp_sum > 0.0 ? g_mag / amp_sum : 1.0;
        }
    }

    // Drive coefficient of the a† term, with coupling and detuning errors.
    Complex drive(double t) const {
        const double eps_eff = seg->eps * (1.0 + err->detuning_static + err->drift_rate * t);
        const double gain = 1.0 + err->coupling;
        if (const auto* mt = std::get_if<MultiToneMod>(&seg->modulation)) {
            Complex c{0.0, 0.0};
            for (const Tone& tone : mt->tones)
                c += seg->g0 * tone.amplitude * cis(tone.index * eps_eff * t - seg->zeta_minus);
            return gain * c;
        }
        return gain * seg->g0 * envelope_shape(seg->modulation, t) *
               cis(eps_eff * t - seg->zeta_minus);
    }

    // lambda(t) = s * stark_coef * |g(t)|^2 / |g_i|, independent of the coupling error.
    double stark(double t) const {
        if (stark_scale == 0.0) return 0.0;
        if (std::holds_alternative<MultiToneMod>(seg->modulation)) {
            const double eps_eff =
                seg->eps * (1.0 + err->detuning_static + err->drift_rate * t);
            Complex c{0.0, 0.0};
            const auto& tones = std::get<MultiToneMod>(seg->modulation).tones;
            for (const Tone& tone : tones)
                c += seg->g0 * tone.amplitude * cis(tone.index * eps_eff * t);
            return stark_scale * stark_norm * std::norm(c) / std::max(std::abs(seg->g0), 1e-300);
        }
        const double g_abs = std::abs(seg->g0) * envelope_shape(seg->modulation, t);
        return stark_scale * g_abs * g_abs;
    }

    void rhs(double t, const Vector& y, Vector& dy) const {
        const Complex c = drive(t);
        dy.noalias() = c * (raise * y);
        dy.noalias() += std::conj(c) * (lower * y);
        const double lam = stark(t);
        if (lam != 0.0) dy.array() += lam * sz.array() * y.array();
        dy *= -imag_unit;
    }

    double stretched_end() const {
        const double stretch = seg->timing_affected ? 1.0 + err->timing : 1.0;
        return seg->t_start + stretch * seg->duration();
    }
};

// Dormand-Prince 5(4) with FSAL and a standard PI-free step controller.
void integrate_dopri5(const SegmentEngine& engine, Vector& y, double t0, double t1,
                      const IntegratorSettings& settings) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double span = t1 - t0;
    if (span <= 0.0) return;

    const Eigen::Index dim = y.size();
    Vector k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim), ytmp(dim), ynew(dim);

    double t = t0;
    double h = std::min(settings.max_step, span / 16.0);
    engine.rhs(t, y, k1);

    while (t < t1) {
        h = std::min(h, t1 - t);
        if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1.0))
            throw IntegrationError("evolve_segment: step size underflow", t);

        ytmp = y + h * a21 * k1;
        engine.rhs(t + c2 * h, ytmp, k2);
        ytmp = y + h * (a31 * k1 + a32 * k2);
        engine.rhs(t + c3 * h, ytmp, k3);
        ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        engine.rhs(t + c4 * h, ytmp, k4);
        ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        engine.rhs(t + c5 * h, ytmp, k5);
        ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        engine.rhs(t + h, ytmp, k6);
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        engine.rhs(t + h, ynew, k7);

        double err_sq = 0.0;
        for (Eigen::Index i = 0; i < dim; ++i) {
            const Complex ei = h * (e1 * k1(i) + e3 * k3(i) + e4 * k4(i) + e5 * k5(i) +
                                    e6 * k6(i) + e7 * k7(i));
            const double scale =
                settings.abs_tol +
                settings.rel_tol * std::max(std::abs(y(i)), std::abs(ynew(i)));
            err_sq += std::norm(ei) / (scale * scale);
        }
        const double err = std::sqrt(err_sq / static_cast<double>(dim));

        if (err <= 1.0) {
            t += h;
            y.swap(ynew);
            k1.swap(k7);  // FSAL
        }
        const double factor =
            err > 0.0 ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
        h = std::min(factor * h, settings.max_step);
    }
}

void apply_phase_gate(Vector& psi, const PhaseGate& gate, double angle,
                      const HilbertConfig& cfg) {
    // F(phi) = exp(-i phi sigma_z) on the target qubit.
    const Complex up = cis(-angle), down = cis(angle);
    const int nf = cfg.n_fock;
    for (int q1 = 0; q1 < 2; ++q1)
        for (int q2 = 0; q2 < 2; ++q2) {
            const int bit = gate.target_qubit == 1 ? q1 : q2;
            psi.segment((q1 * 2 + q2) * nf, nf) *= (bit == 0 ? up : down);
        }
}

}  // namespace

Matrix build_hamiltonian(const PulseSegment& seg, const ErrorModel& err, double t,
                         const HilbertConfig& cfg) {
    const SegmentEngine engine(seg, err, cfg);
    const double slack = 1e-9 * std::max(1.0, std::abs(engine.stretched_end()));
    if (t < seg.t_start - slack || t > engine.stretched_end() + slack)
        throw std::invalid_argument("build_hamiltonian: t outside the segment window");

    const Complex c = engine.drive(t);
    Matrix h = c * engine.raise + std::conj(c) * engine.lower;
    const double lam = engine.stark(t);
    if (lam != 0.0) h += (lam * engine.sz).asDiagonal().toDenseMatrix().cast<Complex>();
    return h;
}

Vector evolve_segment(const Vector& psi, const PulseSegment& seg, const ErrorModel& err,
                      const IntegratorSettings& settings, const HilbertConfig& cfg) {
    settings.validate();
    if (psi.size() != cfg.total_dim())
        throw std::invalid_argument("evolve_segment: state dimension mismatch");
    const SegmentEngine engine(seg, err, cfg);
    Vector y = psi;
    integrate_dopri5(engine, y, seg.t_start, engine.stretched_end(), settings);
    return y;
}

Vector evolve_sequence(const Vector& psi, const GateSequence& seq, const ErrorModel& err,
                       const IntegratorSettings& settings, const HilbertConfig& cfg) {
    Vector y = psi;
    const auto apply_gate_at = [&](PhaseGate::Position pos) {
        if (!seq.phase_gate || seq.phase_gate->position != pos) return;
        // A trailing phase gate shares the shutter: its angle picks up (1 + timing).
        const double scale =
            pos == PhaseGate::Position::last ? 1.0 + err.timing : 1.0;
        apply_phase_gate(y, *seq.phase_gate, seq.phase_gate->phi * scale, cfg);
    };

    apply_gate_at(PhaseGate::Position::first);
    for (const PulseSegment& seg : seq.segments) y = evolve_segment(y, seg, err, settings, cfg);
    apply_gate_at(PhaseGate::Position::last);
    return y;
}

Matrix propagator_numeric(const GateSequence& seq, const ErrorModel& err,
                          const IntegratorSettings& settings, const HilbertConfig& cfg) {
    cfg.validate();
    const int dim = cfg.total_dim();
    Matrix u(dim, dim);
    for (int col = 0; col < dim; ++col) {
        Vector basis = Vector::Zero(dim);
        basis(col) = 1.0;
        u.col(col) = evolve_sequence(basis, seq, err, settings, cfg);
    }
    return u;
}

Eigen::Matrix4cd vacuum_block_numeric(const GateSequence& seq, const ErrorModel& err,
                                      const IntegratorSettings& settings,
                                      const HilbertConfig& cfg) {
    cfg.validate();
    Eigen::Matrix4cd block;
    for (int j = 0; j < 4; ++j) {
        Vector basis = Vector::Zero(cfg.total_dim());
        basis(j * cfg.n_fock) = 1.0;
        const Vector out = evolve_sequence(basis, seq, err, settings, cfg);
        for (int i = 0; i < 4; ++i) block(i, j) = out(i * cfg.n_fock);
    }
    return block;
}

int default_n_fock(const GateSequence& seq, const ErrorModel& err) {
    if (err.stark_fraction != 0.0) return 35;
    return seq.label == "single" ? 14 : 35;
}

}  // namespace msgate
