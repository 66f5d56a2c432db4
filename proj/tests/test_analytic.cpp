#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "msgate/analytic.hpp"
#include "msgate/errors.hpp"
#include "msgate/quadrature.hpp"

using namespace msgate;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;

PulseSegment make_segment(Modulation mod, Complex g0, double eps, double t0, double t1,
                          double zeta_minus = 0.0) {
    PulseSegment seg;
    seg.modulation = std::move(mod);
    seg.g0 = g0;
    seg.eps = eps;
    seg.t_start = t0;
    seg.t_end = t1;
    seg.zeta_minus = zeta_minus;
    return seg;
}

// Constant-envelope antiderivative: alpha = -g (e^{i eps T2} - e^{i eps T1}) / eps.
Complex alpha_const_oracle(Complex g0, double eps, double T1, double T2) {
    const Complex e2 = std::exp(Complex(0, eps * T2)), e1 = std::exp(Complex(0, eps * T1));
    return -g0 * (e2 - e1) / eps;
}

// Constant-envelope theta for purely imaginary g0 = i gm over [T1, T2].
double theta_const_oracle(double gm, double eps, double T1, double T2) {
    const double d = T2 - T1;
    return 2.0 * gm * gm * (d - std::sin(eps * d) / eps) / eps;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("quadrature sanity") {
    CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-14) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    const Complex osc = integrate([](double t) { return std::exp(Complex(0, t)); }, 0.0,
                                  two_pi, 1e-13);
    CHECK(std::abs(osc) < 1e-12);
}

TEST_CASE("alpha of the standard gate closes over a full loop") {
    const auto seg = make_segment(ConstantMod{}, Complex(0, 0.25), 1.0, 0.0, two_pi);
    CHECK(std::abs(alpha_numeric(seg, 0.0, two_pi)) < 1e-12);
}

TEST_CASE("alpha of the standard gate at the half loop") {
    const auto seg = make_segment(ConstantMod{}, Complex(0, 0.25), 1.0, 0.0, two_pi);
    const Complex a = alpha_numeric(seg, 0.0, pi);
    CHECK(std::abs(a - Complex(0.0, 0.5)) < 1e-12);
    CHECK(std::abs(a - alpha_const_oracle(seg.g0, 1.0, 0.0, pi)) < 1e-12);
}

TEST_CASE("alpha picks up the zeta- phase as a pure rotation") {
    const auto plain = make_segment(ConstantMod{}, Complex(0, 0.3), 1.3, 0.2, 2.1);
    const auto shifted = make_segment(ConstantMod{}, Complex(0, 0.3), 1.3, 0.2, 2.1, 0.8);
    const Complex expected =
        alpha_numeric(plain, 0.2, 2.1) * std::exp(Complex(0, -0.8));
    CHECK(std::abs(alpha_numeric(shifted, 0.2, 2.1) - expected) < 1e-12);
}

TEST_CASE("sin32 trajectory closes at integer detuning") {
    const auto seg =
        make_segment(SineCosineMod{1.5, 2, 0.0, 0}, Complex(0, 1), 1.0, 0.0, two_pi);
    CHECK(std::abs(alpha_numeric(seg, 0.0, two_pi)) < 1e-11);
}

TEST_CASE("alpha rejects multi-tone modulations") {
    const auto seg =
        make_segment(MultiToneMod{two_tone_amplitudes(1.0)}, Complex(0, 1), 1.0, 0.0, 1.0);
    CHECK_THROWS_AS(alpha_numeric(seg, 0.0, 1.0), UnsupportedModulationError);
    CHECK_THROWS_AS(theta_numeric(seg, 0.0, 1.0), UnsupportedModulationError);
}

TEST_CASE("multi-tone alpha reduces to the constant case for one tone") {
    const std::vector<Tone> tone = {{1, 1.0}};
    CHECK(std::abs(alpha_multitone(tone, Complex(0, 0.25), 1.0, 0.0, 0.0, two_pi)) < 1e-12);
}

TEST_CASE("two-tone alpha closes over the full period") {
    const auto tones = two_tone_amplitudes(1.0);
    CHECK(std::abs(alpha_multitone(tones, imag_unit, 1.0, 0.0, 0.0, two_pi)) < 1e-12);
}

TEST_CASE("two-tone alpha against the term-by-term antiderivative") {
    const auto tones = two_tone_amplitudes(1.0);
    Complex oracle{0.0, 0.0};
    for (const Tone& tone : tones)
        oracle += alpha_const_oracle(imag_unit * tone.amplitude, tone.index * 1.0, 0.0, pi);
    const Complex value = alpha_multitone(tones, imag_unit, 1.0, 0.0, 0.0, pi);
    CHECK(std::abs(value - oracle) < 1e-12);
    CHECK(std::abs(value - Complex(0.0, -0.2888)) < 1e-12);
}

TEST_CASE("theta of the standard gate is pi/4") {
    const auto seg = make_segment(ConstantMod{}, Complex(0, 0.25), 1.0, 0.0, two_pi);
    CHECK(theta_numeric(seg, 0.0, two_pi) == doctest::Approx(pi / 4.0).epsilon(1e-9));
}

TEST_CASE("theta vanishes on an empty interval") {
    const auto seg = make_segment(ConstantMod{}, Complex(0, 0.25), 1.0, 0.0, two_pi);
    CHECK(theta_numeric(seg, 1.3, 1.3) == 0.0);
}

TEST_CASE("theta of sin32 over the full window") {
    const auto seg =
        make_segment(SineCosineMod{1.5, 2, 0.0, 0}, Complex(0, 1), 1.0, 0.0, two_pi);
    CHECK(theta_numeric(seg, 0.0, two_pi) == doctest::Approx(0.9375 * pi).epsilon(1e-9));
}

TEST_CASE("theta over a partial constant window matches the antiderivative") {
    const auto seg = make_segment(ConstantMod{}, Complex(0, 0.25), 1.0, 0.0, two_pi);
    CHECK(theta_numeric(seg, 0.3, 1.5) ==
          doctest::Approx(theta_const_oracle(0.25, 1.0, 0.3, 1.5)).epsilon(1e-10));
}

TEST_CASE("theta is independent of the sideband phases") {
    auto seg = make_segment(SineCosineMod{1.5, 2, 0.0, 0}, Complex(0, 0.5), 1.0, 0.0, two_pi);
    const double base = theta_numeric(seg, 0.0, two_pi);
    seg.zeta_minus = 2.2;
    seg.zeta_plus = {0.0, 1.1};
    CHECK(std::abs(theta_numeric(seg, 0.0, two_pi) - base) < 1e-12);
}

TEST_CASE("alpha is linear and theta quadratic in the amplitude") {
    const double c = 1.7;
    const auto base = make_segment(SineCosineMod{1.5, 2, 0.0, 0}, Complex(0, 0.4), 1.0, 0.0, 4.0);
    const auto scaled =
        make_segment(SineCosineMod{1.5, 2, 0.0, 0}, Complex(0, 0.4 * c), 1.0, 0.0, 4.0);
    CHECK(std::abs(alpha_numeric(scaled, 0.0, 4.0) - c * alpha_numeric(base, 0.0, 4.0)) <
          1e-11);
    CHECK(theta_numeric(scaled, 0.0, 4.0) ==
          doctest::Approx(c * c * theta_numeric(base, 0.0, 4.0)).epsilon(1e-10));
}

TEST_CASE("multi-tone theta reduces to the single-tone constant case") {
    const std::vector<Tone> tone = {{1, 0.25}};
    CHECK(theta_multitone(tone, imag_unit, 1.0, 0.0, two_pi) ==
          doctest::Approx(pi / 4.0).epsilon(1e-9));
}

TEST_CASE("two-tone theta over the gate window") {
    const auto tones = two_tone_amplitudes(1.0);
    // scipy nested-quadrature oracle for the detuning-optimized tone set
    CHECK(theta_multitone(tones, imag_unit, 1.0, 0.0, two_pi) ==
          doctest::Approx(0.7860777527202728).epsilon(1e-9));
}

TEST_CASE("closed forms agree with quadrature across the validity domain") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const struct {
        const char* name;
        double t_max;
        double eps_lo, eps_hi;
    } domains[] = {
        {"sin14", 4.0 * pi, 0.7, 2.5},
        {"sincos", two_pi, 2.3, 4.0},
        {"sin32", two_pi, 0.3, 2.5},
    };
    for (const auto& dom : domains) {
        const ClosedFormShape shape = closed_form_shape(dom.name);
        const Modulation mod = modulation_for(dom.name, 1.0);
        for (int trial = 0; trial < 20; ++trial) {
            const double eps = dom.eps_lo + (dom.eps_hi - dom.eps_lo) * unit(rng);
            const double t = 0.2 + (dom.t_max - 0.2) * unit(rng);
            const double gm = 0.1 + 0.9 * unit(rng);
            const Complex g0 = imag_unit * gm;
            const AlphaTheta closed = closed_form_alpha_theta(shape, g0, eps, t);
            auto seg = make_segment(mod, g0, eps, 0.0, t);
            CHECK(std::abs(closed.alpha - alpha_numeric(seg, 0.0, t)) < 1e-9);
            CHECK(std::abs(closed.theta - theta_numeric(seg, 0.0, t)) < 1e-9);
        }
    }
}

TEST_CASE("closed-form sin32 at the paper's gate point") {
    const AlphaTheta at = closed_form_alpha_theta(ClosedFormShape::sin32, imag_unit, 1.0, two_pi);
    CHECK(std::abs(at.alpha) < 1e-12);
    CHECK(at.theta == doctest::Approx(0.9375 * pi).epsilon(1e-12));
}

TEST_CASE("closed-form sin14 gives theta = 10 pi/3 |g|^2 at 4 pi") {
    const double gm = std::sqrt(3.0 / 40.0);
    const AlphaTheta at =
        closed_form_alpha_theta(ClosedFormShape::sin14, imag_unit * gm, 1.0, 4.0 * pi);
    CHECK(at.theta == doctest::Approx(pi / 4.0).epsilon(1e-12));
}

TEST_CASE("closed forms refuse singular detunings") {
    CHECK_THROWS_AS(closed_form_alpha_theta(ClosedFormShape::sin14, imag_unit, 0.5, 1.0),
                    SingularParameterError);
    CHECK_THROWS_AS(closed_form_alpha_theta(ClosedFormShape::sincos, imag_unit, 1.0, 1.0),
                    SingularParameterError);
    CHECK_THROWS_AS(closed_form_alpha_theta(ClosedFormShape::sincos, imag_unit, -2.0, 1.0),
                    SingularParameterError);
    CHECK_THROWS_AS(closed_form_alpha_theta(ClosedFormShape::sin32, imag_unit, 3.0, 1.0),
                    SingularParameterError);
    CHECK_THROWS_AS(closed_form_alpha_theta(ClosedFormShape::sin32, imag_unit, 0.0, 1.0),
                    SingularParameterError);
}

TEST_CASE("closed forms refuse times outside the validity window") {
    CHECK_THROWS_AS(closed_form_alpha_theta(ClosedFormShape::sin32, imag_unit, 1.0, 7.0),
                    std::invalid_argument);
}

TEST_CASE("constant-coupling relations") {
    const auto r1 = constant_relations(0.25);
    CHECK(r1.eps == doctest::Approx(1.0));
    CHECK(r1.tau_g == doctest::Approx(two_pi));

    const auto r2 = constant_relations(1.0);
    CHECK(r2.eps == doctest::Approx(4.0));
    CHECK(r2.tau_g == doctest::Approx(pi / 2.0));

    const double g_phys = two_pi * 6972.0;
    const auto r3 = constant_relations(g_phys);
    CHECK(r3.eps * r3.tau_g == doctest::Approx(two_pi).epsilon(1e-12));
    CHECK_THROWS_AS(constant_relations(0.0), std::invalid_argument);
}

TEST_CASE("zero displacement gives the identity") {
    const HilbertConfig cfg{5};
    CHECK(max_abs(displacement_matrix({Complex{}, Complex{}}, {0.0, 0.0}, cfg) -
                  Matrix::Identity(cfg.total_dim(), cfg.total_dim())) < 1e-13);
}

TEST_CASE("displacement of ion 1 creates a coherent state on |++>") {
    const HilbertConfig cfg{30};
    const Matrix d = displacement_matrix({Complex(0.3, 0.0), Complex{}}, {0.0, 0.0}, cfg);

    Vector plus_plus = Vector::Zero(cfg.total_dim());
    for (int s = 0; s < 4; ++s) plus_plus(s * cfg.n_fock) = 0.5;  // |+>|+>|0>
    const Vector out = d * plus_plus;

    double n_mean = 0.0;
    for (int s = 0; s < 4; ++s)
        for (int n = 0; n < cfg.n_fock; ++n) n_mean += n * std::norm(out(s * cfg.n_fock + n));
    CHECK(n_mean == doctest::Approx(0.09).epsilon(1e-6));
}

TEST_CASE("opposite displacements cancel") {
    const HilbertConfig cfg{30};
    const std::array<double, 2> zp{0.0, 0.9};
    const std::array<Complex, 2> alpha{Complex(0.35, 0.2), Complex(0.0, -0.4)};
    const std::array<Complex, 2> minus{-alpha[0], -alpha[1]};
    const Matrix product =
        displacement_matrix(minus, zp, cfg) * displacement_matrix(alpha, zp, cfg);
    CHECK(max_abs(product - Matrix::Identity(cfg.total_dim(), cfg.total_dim())) < 1e-9);
}

TEST_CASE("ms_propagator produces the Bell state at theta = pi/4") {
    const HilbertConfig cfg{6};
    const Matrix u = ms_propagator({Complex{}, Complex{}}, pi / 4.0, {0.0, 0.0}, cfg);
    Vector in = Vector::Zero(cfg.total_dim());
    in(0) = 1.0;
    const Vector out = u * in;
    Vector bell = Vector::Zero(cfg.total_dim());
    bell(0) = 1.0 / std::sqrt(2.0);
    bell(3 * cfg.n_fock) = imag_unit / std::sqrt(2.0);
    CHECK((out - bell).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("ms_propagator at zero angle is the identity") {
    const HilbertConfig cfg{4};
    CHECK(max_abs(ms_propagator({Complex{}, Complex{}}, 0.0, {0.0, 0.0}, cfg) -
                  Matrix::Identity(cfg.total_dim(), cfg.total_dim())) < 1e-13);
}

TEST_CASE("ms_propagator is unitary") {
    const HilbertConfig cfg{12};
    const Matrix u =
        ms_propagator({Complex(0.2, 0.1), Complex(0.2, 0.1)}, pi / 4.0, {0.0, 1.823}, cfg);
    CHECK(max_abs(Matrix(u.adjoint() * u) - Matrix::Identity(cfg.total_dim(), cfg.total_dim())) <
          1e-10);
}

TEST_CASE("closure phase of the sin32 pulse pair matches the published value") {
    const Modulation mod = modulation_for("sin32", 1.0);
    const auto result = closure_phase(mod, imag_unit, 1.0, {0.0, pi / 3.0}, {pi / 3.0, two_pi / 3.0});
    CHECK(result.zeta_minus == doctest::Approx(-pi + 0.6207).epsilon(0).scale(1).epsilon(1e-3));
    CHECK(result.zeta_minus == doctest::Approx(-2.520826).epsilon(1e-5));
    CHECK(result.exact);
}

TEST_CASE("sin14 and sincos pairs close without a phase jump") {
    const auto sin14 = closure_phase(modulation_for("sin14", 1.0), imag_unit, 1.0,
                                     {0.0, two_pi}, {two_pi, 4.0 * pi});
    CHECK(std::abs(sin14.zeta_minus) < 1e-3);
    CHECK(sin14.exact);

    const auto sincos = closure_phase(modulation_for("sincos", 3.0), imag_unit, 3.0,
                                      {0.0, pi}, {pi, two_pi});
    CHECK(std::abs(sincos.zeta_minus) < 1e-3);
    CHECK(sincos.exact);
}

TEST_CASE("closure fails when the halves have mismatched magnitudes") {
    // A full bell against a half bell cannot close by a phase alone.
    const Modulation mod = modulation_for("sin32", 1.0);
    CHECK_THROWS_AS(
        closure_phase(mod, imag_unit, 1.0, {0.0, two_pi / 3.0}, {two_pi / 3.0, pi}),
        NoClosureError);
}

TEST_CASE("calibration reproduces the published couplings") {
    CHECK(calibrate_amplitude(modulation_for("const", 1.0), 1.0, {0.0, two_pi}, pi / 4.0) ==
          doctest::Approx(0.25).epsilon(1e-9));
    CHECK(calibrate_amplitude(modulation_for("sin32", 1.0), 1.0, {0.0, two_pi}, pi / 4.0) ==
          doctest::Approx(std::sqrt(4.0 / 15.0)).epsilon(1e-9));
    CHECK(calibrate_amplitude(modulation_for("sin14", 1.0), 1.0, {0.0, 4.0 * pi}, pi / 4.0) ==
          doctest::Approx(std::sqrt(3.0 / 40.0)).epsilon(1e-9));
    CHECK(calibrate_amplitude(modulation_for("sincos", 3.0), 3.0, {0.0, two_pi}, pi / 4.0) ==
          doctest::Approx(std::sqrt(60.0 / 83.0)).epsilon(1e-9));
}

TEST_CASE("calibration rejects windows with the wrong rotation sign") {
    CHECK_THROWS_AS(
        calibrate_amplitude(modulation_for("sincos", 3.0), 3.0, {1.2, 2.0}, pi / 4.0),
        UncalibratableError);
}

TEST_CASE("segment helpers dispatch on the modulation") {
    auto scalar = make_segment(SineCosineMod{1.5, 2, 0.0, 0}, Complex(0, 0.5), 1.0, 0.0, 2.0);
    CHECK(segment_theta(scalar) == doctest::Approx(theta_numeric(scalar, 0.0, 2.0)));
    CHECK(std::abs(segment_alpha(scalar) - alpha_numeric(scalar, 0.0, 2.0)) < 1e-14);

    auto mt = make_segment(MultiToneMod{two_tone_amplitudes(1.0)}, imag_unit, 1.0, 0.0, two_pi);
    CHECK(segment_theta(mt) == doctest::Approx(0.7860777527202728).epsilon(1e-9));
    CHECK(std::abs(segment_alpha(mt)) < 1e-12);
}
