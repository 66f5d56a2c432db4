#include "msgate/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "msgate/errors.hpp"
#include "msgate/quadrature.hpp"

namespace msgate {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;

Complex cis(double x) { return {std::cos(x), std::sin(x)}; }

}  // namespace

Complex alpha_numeric(const PulseSegment& seg, double T1, double T2) {
    if (T1 > T2) throw std::invalid_argument("alpha_numeric: T1 must not exceed T2");
    if (std::holds_alternative<MultiToneMod>(seg.modulation))
        throw UnsupportedModulationError("alpha_numeric: use alpha_multitone for tone sums");
    const Complex prefactor = -imag_unit * seg.g0 * cis(-seg.zeta_minus);
    return prefactor * integrate(
                           [&](double tau) {
                               return envelope_shape(seg.modulation, tau) * cis(seg.eps * tau);
                           },
                           T1, T2, 1e-12);
}

Complex alpha_multitone(std::span<const Tone> tones, Complex g0, double eps,
                        double zeta_minus, double T1, double T2) {
    if (tones.empty()) throw std::invalid_argument("alpha_multitone: empty tone list");
    if (T1 > T2) throw std::invalid_argument("alpha_multitone: T1 must not exceed T2");
    Complex total{0.0, 0.0};
    for (const Tone& tone : tones) {
        const Complex pre = -imag_unit * g0 * tone.amplitude * cis(-zeta_minus);
        total += pre * integrate([&](double tau) { return cis(tone.index * eps * tau); }, T1,
                                 T2, 1e-12);
    }
    return total;
}

double theta_numeric(const PulseSegment& seg, double T1, double T2) {
    if (T1 > T2) throw std::invalid_argument("theta_numeric: T1 must not exceed T2");
    if (std::holds_alternative<MultiToneMod>(seg.modulation))
        throw UnsupportedModulationError("theta_numeric: use theta_multitone for tone sums");
    if (T1 == T2) return 0.0;

    const auto shape = [&](double tau) { return envelope_shape(seg.modulation, tau); };
    // inner(tau2) = Int_{T1}^{tau2} f(tau1) sin(eps (tau1 - tau2)) dtau1
    const Complex value =
        2.0 * seg.g0 * seg.g0 *
        integrate(
            [&](double tau2) {
                const double inner = integrate(
                    [&](double tau1) { return shape(tau1) * std::sin(seg.eps * (tau1 - tau2)); },
                    T1, tau2, 1e-12);
                return shape(tau2) * inner;
            },
            T1, T2, 1e-10);
    if (std::abs(value.imag()) > 1e-10)
        throw InternalConsistencyError("theta_numeric: imaginary residue above 1e-10");
    return value.real();
}

double theta_multitone(std::span<const Tone> tones, Complex g0, double eps, double T1,
                       double T2) {
    if (tones.empty()) throw std::invalid_argument("theta_multitone: empty tone list");
    if (T1 >= T2) return 0.0;
    const auto drive = [&](double t) {
        Complex c{0.0, 0.0};
        for (const Tone& tone : tones) c += g0 * tone.amplitude * cis(tone.index * eps * t);
        return c;
    };
    // theta = -2 Int_{T1}^{T2} dt1 Int_{T1}^{t1} dt2 Im(conj(c(t1)) c(t2))
    return -2.0 * integrate(
                      [&](double t1) {
                          const Complex c1 = std::conj(drive(t1));
                          const Complex inner =
                              integrate([&](double t2) { return drive(t2); }, T1, t1, 1e-12);
                          return (c1 * inner).imag();
                      },
                      T1, T2, 1e-10);
}

double segment_theta(const PulseSegment& seg) {
    if (const auto* mt = std::get_if<MultiToneMod>(&seg.modulation))
        return theta_multitone(mt->tones, seg.g0, seg.eps, seg.t_start, seg.t_end);
    return theta_numeric(seg, seg.t_start, seg.t_end);
}

Complex segment_alpha(const PulseSegment& seg) {
    if (const auto* mt = std::get_if<MultiToneMod>(&seg.modulation))
        return alpha_multitone(mt->tones, seg.g0, seg.eps, seg.zeta_minus, seg.t_start,
                               seg.t_end);
    return alpha_numeric(seg, seg.t_start, seg.t_end);
}

namespace {

void require_nonsingular(double eps, std::initializer_list<double> singular,
                         const char* shape) {
    for (double s : singular)
        if (std::abs(eps - s) < 1e-7)
            throw SingularParameterError(std::string("closed_form_alpha_theta: ") + shape +
                                         " is singular at this detuning");
}

void require_in_window(double t, double t_max) {
    if (t < -1e-12 || t > t_max + 1e-12)
        throw std::invalid_argument("closed_form_alpha_theta: t outside validity interval");
}

AlphaTheta closed_form_sin14(Complex g, double e, double t) {
    require_nonsingular(e, {0.0, 0.5, -0.5}, "sin14");
    require_in_window(t, 4.0 * pi);
    const Complex eite = cis(t * e);
    const double e2 = e * e;

    const Complex alpha =
        g / (2.0 * e * (4.0 * e2 - 1.0)) *
        (eite * (4.0 * e2 * std::cos(t / 2.0) - 2.0 * imag_unit * e * std::sin(t / 2.0) -
                 4.0 * e2 + 1.0) -
         1.0);

    const double e3 = e2 * e, e4 = e2 * e2, e5 = e4 * e;
    const double ste = std::sin(t * e);
    const double bracket = 24.0 * t * e5 - 10.0 * t * e3 +
                           2.0 * (4.0 * e2 - 1.0) * e3 * std::sin(t) + 4.0 * e2 * ste -
                           4.0 * e2 * std::cos(t / 2.0) * ste -
                           2.0 * e * std::sin(t / 2.0) *
                               (1.0 - std::cos(t * e) + 32.0 * e4 - 12.0 * e2) +
                           t * e - ste;
    const double denom = 2.0 * (e - 4.0 * e3) * (e - 4.0 * e3);
    const Complex theta = -g * g / denom * bracket;
    if (std::abs(theta.imag()) > 1e-10)
        throw InternalConsistencyError("closed_form sin14: theta not real for this coupling");
    return {alpha, theta.real()};
}

AlphaTheta closed_form_sincos(Complex g, double e, double t) {
    require_nonsingular(e, {0.0, 1.0, -1.0, 2.0, -2.0}, "sincos");
    require_in_window(t, two_pi);

    // The published alpha expression takes the coupling magnitude; feeding
    // -i g reproduces the Eq.-(6a) integral for complex g (checked against
    // quadrature; the theta expression below takes g^2 directly).
    const Complex gm = -imag_unit * g;
    const auto term = [&](double shift) {
        return (cis(t * (e + shift)) - 1.0) / (e + shift);
    };
    const Complex alpha = imag_unit * gm / 8.0 *
                          (term(-2.0) - 2.0 * term(-1.0) + 2.0 * term(0.0) - 2.0 * term(1.0) +
                           term(2.0));

    const double e2 = e * e, e4 = e2 * e2;
    const double q = e4 - 5.0 * e2 + 4.0;
    const double st = std::sin(t), s2t = std::sin(2.0 * t), s3t = std::sin(3.0 * t),
                 s4t = std::sin(4.0 * t);
    const double ct = std::cos(t), c2t = std::cos(2.0 * t);
    const double ste = std::sin(t * e), cte = std::cos(t * e);

    const double inner1 = 12.0 * t * (7.0 * e4 - 27.0 * e2 + 8.0) +
                          e2 * (8.0 * (5.0 - 2.0 * e2) * s3t + 3.0 * (e2 - 1.0) * s4t) -
                          24.0 * (6.0 * e4 - 23.0 * e2 + 8.0) * st +
                          24.0 * (2.0 * e4 - 7.0 * e2 + 2.0) * s2t;
    const double inner2 =
        96.0 * e * (e2 + 2.0) * st * (2.0 * (e2 - 1.0) * ct - e2 + 4.0) * cte;
    const double inner3 = -48.0 * (e2 + 2.0) * ste *
                          ((e2 - 1.0) * (e2 * c2t + e2 - 4.0) - 2.0 * e2 * (e2 - 4.0) * ct);

    const Complex theta = g * g / (192.0 * e2 * q * q) * (e * q * inner1 + inner2 + inner3);
    if (std::abs(theta.imag()) > 1e-10)
        throw InternalConsistencyError("closed_form sincos: theta not real for this coupling");
    return {alpha, theta.real()};
}

AlphaTheta closed_form_sin32(Complex g, double e, double t) {
    require_nonsingular(e, {0.0, 3.0, -3.0}, "sin32");
    require_in_window(t, two_pi);
    const double e2 = e * e;

    const Complex alpha = g *
                          (-2.0 * (e2 - 9.0) * cis(t * e) + (e - 3.0) * e * cis(t * (e + 3.0)) +
                           (e + 3.0) * e * cis(t * (e - 3.0)) - 18.0) /
                          (4.0 * e * (e2 - 9.0));

    const double e3 = e2 * e;
    const double bracket =
        (9.0 - e2) * (e3 * std::sin(6.0 * t) + 4.0 * (9.0 - 2.0 * e2) * e * std::sin(3.0 * t) +
                      18.0 * (t * e * (e2 - 6.0) + 6.0 * std::sin(t * e))) +
        54.0 * (e - 3.0) * e * std::sin(t * (e + 3.0)) -
        54.0 * e * (e + 3.0) * std::sin(t * (3.0 - e));
    const Complex theta = g * g / (24.0 * e2 * (e2 - 9.0) * (e2 - 9.0)) * bracket;
    if (std::abs(theta.imag()) > 1e-10)
        throw InternalConsistencyError("closed_form sin32: theta not real for this coupling");
    return {alpha, theta.real()};
}

}  // namespace

AlphaTheta closed_form_alpha_theta(ClosedFormShape shape, Complex g0, double eps, double t) {
    switch (shape) {
        case ClosedFormShape::sin14: return closed_form_sin14(g0, eps, t);
        case ClosedFormShape::sincos: return closed_form_sincos(g0, eps, t);
        case ClosedFormShape::sin32: return closed_form_sin32(g0, eps, t);
    }
    throw std::invalid_argument("closed_form_alpha_theta: bad shape");
}

ClosedFormShape closed_form_shape(std::string_view name) {
    if (name == "sin14") return ClosedFormShape::sin14;
    if (name == "sincos") return ClosedFormShape::sincos;
    if (name == "sin32") return ClosedFormShape::sin32;
    throw std::invalid_argument("no closed form for shape: " + std::string(name));
}

ConstantRelations constant_relations(double g_mag) {
    if (g_mag <= 0.0) throw std::invalid_argument("constant_relations: coupling must be > 0");
    const double eps = 4.0 * g_mag;
    return {eps, two_pi / eps};
}

Matrix displacement_matrix(const std::array<Complex, 2>& alpha_per_ion,
                           const std::array<double, 2>& zeta_plus, const HilbertConfig& cfg) {
    cfg.validate();
    const auto [a, ad] = ladder_ops(cfg);
    const Matrix id2 = Matrix::Identity(2, 2);
    Matrix exponent = Matrix::Zero(cfg.total_dim(), cfg.total_dim());
    for (int k = 0; k < 2; ++k) {
        const Matrix motional = alpha_per_ion[k] * ad - std::conj(alpha_per_ion[k]) * a;
        const Eigen::Matrix2cd spin = sigma_phase(zeta_plus[k]);
        exponent += k == 0 ? kron(kron(spin, id2), motional) : kron(kron(id2, spin), motional);
    }
    return matrix_exp(exponent);
}

Matrix ms_propagator(const std::array<Complex, 2>& alpha_per_ion, double theta,
                     const std::array<double, 2>& zeta_plus, const HilbertConfig& cfg) {
    cfg.validate();
    const Matrix spin_pair =
        kron(sigma_phase(zeta_plus[0]), sigma_phase(zeta_plus[1]));  // squares to identity
    const Matrix rotation =
        kron(std::cos(theta) * Matrix::Identity(4, 4) + imag_unit * std::sin(theta) * spin_pair,
             Matrix::Identity(cfg.n_fock, cfg.n_fock));
    return displacement_matrix(alpha_per_ion, zeta_plus, cfg) * rotation;
}

namespace {

ClosureResult solve_closure(Complex beta, Complex alpha_second) {
    const auto residual = [&](double zeta) {
        return std::abs(beta + cis(-zeta) * alpha_second);
    };

    // 720-point coarse scan over (-pi, pi], ties broken towards smaller |zeta|.
    const int n = 720;
    double best_zeta = 0.0;
    double best_res = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double zeta = -pi + (i + 1) * (two_pi / n);
        const double r = residual(zeta);
        if (r < best_res - 1e-15 ||
            (std::abs(r - best_res) <= 1e-15 && std::abs(zeta) < std::abs(best_zeta))) {
            best_res = r;
            best_zeta = zeta;
        }
    }

    // Golden-section refinement around the coarse minimum.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = best_zeta - two_pi / n, hi = best_zeta + two_pi / n;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = residual(x1), f2 = residual(x2);
    for (int it = 0; it < 90 && hi - lo > 1e-14; ++it) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo); f1 = residual(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo); f2 = residual(x2);
        }
    }
    double zeta = 0.5 * (lo + hi);
    double res = residual(zeta);
    if (residual(best_zeta) < res) {  // keep the coarse point if refinement didn't help
        zeta = best_zeta;
        res = residual(best_zeta);
    }
    while (zeta <= -pi) zeta += two_pi;
    while (zeta > pi) zeta -= two_pi;

    const double scale = std::max(1.0, std::abs(beta));
    if (res > 1e-6 * scale)
        throw NoClosureError(
            "closure_phase: envelope halves have mismatched displacement magnitudes", res);
    return {zeta, res, res < 1e-9 * scale};
}

}  // namespace

ClosureResult closure_phase(const Modulation& mod, Complex g0, double eps,
                            std::pair<double, double> first_half,
                            std::pair<double, double> second_half) {
    PulseSegment seg;
    seg.modulation = mod;
    seg.g0 = g0;
    seg.eps = eps;
    seg.zeta_minus = 0.0;
    seg.t_start = first_half.first;
    seg.t_end = second_half.second;

    const auto alpha_over = [&](std::pair<double, double> w) {
        if (std::holds_alternative<MultiToneMod>(mod)) {
            const auto& tones = std::get<MultiToneMod>(mod).tones;
            return alpha_multitone(tones, g0, eps, 0.0, w.first, w.second);
        }
        return alpha_numeric(seg, w.first, w.second);
    };
    return solve_closure(alpha_over(first_half), alpha_over(second_half));
}

ClosureResult closure_for_pair(const PulseSegment& first, const PulseSegment& second) {
    PulseSegment probe = second;
    probe.zeta_minus = 0.0;
    const auto alpha_of = [](const PulseSegment& s) {
        if (std::holds_alternative<MultiToneMod>(s.modulation)) {
            const auto& tones = std::get<MultiToneMod>(s.modulation).tones;
            return alpha_multitone(tones, s.g0, s.eps, s.zeta_minus, s.t_start, s.t_end);
        }
        return alpha_numeric(s, s.t_start, s.t_end);
    };
    PulseSegment lead = first;
    lead.zeta_minus = 0.0;
    return solve_closure(alpha_of(lead), alpha_of(probe));
}

double calibrate_amplitude(const Modulation& mod, double eps,
                           std::pair<double, double> window, double theta_target) {
    if (theta_target <= 0.0)
        throw std::invalid_argument("calibrate_amplitude: theta_target must be > 0");

    double theta_unit;
    if (std::holds_alternative<MultiToneMod>(mod)) {
        const auto& tones = std::get<MultiToneMod>(mod).tones;
        theta_unit = theta_multitone(tones, imag_unit, eps, window.first, window.second);
    } else {
        PulseSegment probe;
        probe.modulation = mod;
        probe.g0 = imag_unit;
        probe.eps = eps;
        probe.t_start = window.first;
        probe.t_end = window.second;
        theta_unit = theta_numeric(probe, window.first, window.second);
    }
    if (theta_unit <= 0.0)
        throw UncalibratableError("calibrate_amplitude: rotation has wrong sign over window");

    const double g_mag = std::sqrt(theta_target / theta_unit);

    double theta_check;
    if (std::holds_alternative<MultiToneMod>(mod)) {
        const auto& tones = std::get<MultiToneMod>(mod).tones;
        theta_check =
            theta_multitone(tones, imag_unit * g_mag, eps, window.first, window.second);
    } else {
        PulseSegment check;
        check.modulation = mod;
        check.g0 = imag_unit * g_mag;
        check.eps = eps;
        check.t_start = window.first;
        check.t_end = window.second;
        theta_check = theta_numeric(check, window.first, window.second);
    }
    if (std::abs(theta_check - theta_target) > 1e-9)
        throw InternalConsistencyError("calibrate_amplitude: rescaled rotation check failed");
    return g_mag;
}

}  // namespace msgate
