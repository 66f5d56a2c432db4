#include "msgate/modulation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "msgate/errors.hpp"

namespace msgate {

namespace {

double ipow(double x, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

}  // namespace

double envelope_shape(const Modulation& mod, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("envelope_shape: non-finite time");
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ConstantMod>) {
                return 1.0;
            } else if constexpr (std::is_same_v<T, SineCosineMod>) {
                double v = 1.0;
                if (m.l > 0) v *= ipow(std::sin(m.m * t), m.l);
                if (m.p > 0) v *= ipow(std::cos(m.n * t), m.p);
                return v;
            } else {
                throw UnsupportedModulationError(
                    "multi-tone modulation has no scalar envelope; tones carry "
                    "per-tone phase factors e^{i j eps t}");
            }
        },
        mod);
}

Complex eval_envelope(const Modulation& mod, Complex g0, double /*eps*/, double t) {
    return g0 * envelope_shape(mod, t);
}

std::vector<Tone> two_tone_amplitudes(double eps) {
    if (eps <= 0.0) throw std::invalid_argument("two_tone_amplitudes: eps must be > 0");
    return {{1, -0.1444 * eps}, {2, 0.2888 * eps}};
}

void PulseSegment::validate() const {
    if (!(t_end > t_start)) throw std::invalid_argument("PulseSegment: t_end must exceed t_start");
    if (zeta_plus[0] != 0.0)
        throw std::invalid_argument("PulseSegment: zeta1+ is fixed to 0; rotate with zeta2+");
}

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

const std::vector<ShapeInfo>& shape_table() {
    static const std::vector<ShapeInfo> table = {
        {"const", ConstantMod{}, 1.0, two_pi, two_pi / 3.0, false},
        {"sin14", SineCosineMod{0.25, 2, 0.0, 0}, 1.0, 2.0 * two_pi, 2.0 * two_pi, false},
        {"sin32", SineCosineMod{1.5, 2, 0.0, 0}, 1.0, two_pi, two_pi / 3.0, false},
        {"sincos", SineCosineMod{0.5, 2, 1.0, 1}, 3.0, two_pi, two_pi, false},
        {"twotone", MultiToneMod{{{1, -0.1444}, {2, 0.2888}}}, 1.0, two_pi, two_pi / 3.0, true},
    };
    return table;
}

}  // namespace

const ShapeInfo& shape_preset(std::string_view name) {
    for (const auto& info : shape_table())
        if (info.name == name) return info;
    throw std::invalid_argument("unknown shape preset: " + std::string(name));
}

std::vector<std::string> shape_names() {
    std::vector<std::string> names;
    for (const auto& info : shape_table()) names.push_back(info.name);
    return names;
}

Modulation modulation_for(std::string_view shape, double eps) {
    const ShapeInfo& info = shape_preset(shape);
    if (info.multitone) return MultiToneMod{two_tone_amplitudes(eps)};
    return info.modulation;
}

}  // namespace msgate
