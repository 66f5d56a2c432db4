#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "msgate/errors.hpp"
#include "msgate/modulation.hpp"

using namespace msgate;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("constant envelope returns g0 at any time") {
    const Complex g0{0.0, 0.25};
    for (double t : {0.0, 0.3, 17.0, -2.0})
        CHECK(std::abs(eval_envelope(ConstantMod{}, g0, 1.0, t) - g0) < 1e-16);
}

TEST_CASE("sine-squared envelope peaks at one") {
    const SineCosineMod mod{1.5, 2, 0.0, 0};  // sin(3t/2)^2
    const Complex v = eval_envelope(mod, 1.0, 1.0, pi / 3.0);
    CHECK(std::abs(v - Complex{1.0, 0.0}) < 1e-15);
}

TEST_CASE("sine-cosine envelope flips sign with the cosine factor") {
    const SineCosineMod mod{0.5, 2, 1.0, 1};  // sin(t/2)^2 cos(t)
    const Complex v = eval_envelope(mod, 1.0, 1.0, pi);
    CHECK(std::abs(v - Complex{-1.0, 0.0}) < 1e-15);
}

TEST_CASE("multi-tone has no scalar envelope") {
    const Modulation mod = MultiToneMod{two_tone_amplitudes(1.0)};
    CHECK_THROWS_AS(eval_envelope(mod, 1.0, 1.0, 0.5), UnsupportedModulationError);
}

TEST_CASE("two-tone amplitudes at unit detuning") {
    const auto tones = two_tone_amplitudes(1.0);
    REQUIRE(tones.size() == 2);
    CHECK(tones[0].index == 1);
    CHECK(tones[0].amplitude == doctest::Approx(-0.1444).epsilon(1e-12));
    CHECK(tones[1].index == 2);
    CHECK(tones[1].amplitude == doctest::Approx(0.2888).epsilon(1e-12));
}

TEST_CASE("two-tone amplitudes scale linearly in the detuning") {
    const auto tones = two_tone_amplitudes(2.0);
    CHECK(tones[0].amplitude == doctest::Approx(-0.2888).epsilon(1e-12));
    CHECK(tones[1].amplitude == doctest::Approx(0.5776).epsilon(1e-12));

    const double eps = 2.0 * pi * 2000.0;
    CHECK(two_tone_amplitudes(eps)[0].amplitude == doctest::Approx(-0.1444 * eps));
}

TEST_CASE("two-tone amplitudes reject non-positive detuning") {
    CHECK_THROWS_AS(two_tone_amplitudes(0.0), std::invalid_argument);
    CHECK_THROWS_AS(two_tone_amplitudes(-1.0), std::invalid_argument);
}

TEST_CASE("named shapes start smoothly at t=0") {
    for (const char* name : {"sin14", "sin32", "sincos"}) {
        const Modulation mod = modulation_for(name, shape_preset(name).default_eps);
        CHECK(std::abs(envelope_shape(mod, 0.0)) < 1e-15);
    }
}

TEST_CASE("sin(3t/2)^2 has three bells over one sequence window") {
    const SineCosineMod mod{1.5, 2, 0.0, 0};
    // count strict local maxima of the sampled envelope on [0, 2pi]
    const int n = 2000;
    int maxima = 0;
    double prev = envelope_shape(mod, 0.0), cur = envelope_shape(mod, 2.0 * pi / n);
    for (int i = 2; i <= n; ++i) {
        const double next = envelope_shape(mod, i * 2.0 * pi / n);
        if (cur > prev + 1e-12 && cur > next + 1e-12) ++maxima;
        prev = cur;
        cur = next;
    }
    CHECK(maxima == 3);
}

TEST_CASE("shape presets carry the figure configuration") {
    CHECK(shape_preset("const").default_eps == 1.0);
    CHECK(shape_preset("sin14").single_window == doctest::Approx(4.0 * pi));
    CHECK(shape_preset("sincos").default_eps == 3.0);
    CHECK(shape_preset("sin32").single_window == doctest::Approx(2.0 * pi));
    CHECK(shape_preset("twotone").multitone);
    CHECK(shape_names().size() == 5);
    CHECK_THROWS_AS(shape_preset("gaussian"), std::invalid_argument);
}

TEST_CASE("pulse segment validation") {
    PulseSegment seg;
    seg.t_start = 1.0;
    seg.t_end = 0.5;
    CHECK_THROWS_AS(seg.validate(), std::invalid_argument);
    seg.t_end = 2.0;
    seg.zeta_plus = {0.1, 0.0};
    CHECK_THROWS_AS(seg.validate(), std::invalid_argument);
    seg.zeta_plus = {0.0, 1.2};
    CHECK_NOTHROW(seg.validate());
    CHECK(seg.duration() == doctest::Approx(1.0));
}
