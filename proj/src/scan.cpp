#include "msgate/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "msgate/errors.hpp"
#include "msgate/metrics.hpp"
#include "msgate/presets.hpp"

namespace msgate {

namespace {

constexpr double pi = std::numbers::pi;

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

std::string format_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double parse_double_strict(std::string_view text, const char* what) {
    const std::string s = trim(text);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw std::invalid_argument(std::string("could not parse ") + what + ": '" + s + "'");
    return v;
}

}  // namespace

double parse_angle_expr(std::string_view text) {
    std::string s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty angle expression");

    const std::size_t at = s.find("pi");
    if (at == std::string::npos) return parse_double_strict(s, "number");

    const std::string pre = trim(s.substr(0, at));
    const std::string post = trim(s.substr(at + 2));

    double coef = 1.0;
    if (!pre.empty()) {
        if (pre == "-") coef = -1.0;
        else if (pre == "+") coef = 1.0;
        else coef = parse_double_strict(pre, "pi coefficient");
    }
    double divisor = 1.0;
    if (!post.empty()) {
        if (post.front() != '/')
            throw std::invalid_argument("bad angle expression: '" + s + "'");
        divisor = parse_double_strict(post.substr(1), "pi divisor");
        if (divisor == 0.0) throw std::invalid_argument("angle divisor is zero");
    }
    return coef * pi / divisor;
}

std::pair<double, double> parse_window_expr(std::string_view text) {
    const std::string s = trim(text);
    const std::size_t colon = s.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("window must be '<from>:<to>': '" + s + "'");
    const double a = parse_angle_expr(s.substr(0, colon));
    const double b = parse_angle_expr(s.substr(colon + 1));
    if (!(b > a)) throw std::invalid_argument("window end must exceed start");
    return {a, b};
}

ErrorChannel parse_error_channel(std::string_view name) {
    if (name == "timing") return ErrorChannel::timing;
    if (name == "detuning" || name == "detuning_static") return ErrorChannel::detuning_static;
    if (name == "drift" || name == "drift_rate") return ErrorChannel::drift_rate;
    if (name == "coupling") return ErrorChannel::coupling;
    if (name == "stark" || name == "stark_fraction") return ErrorChannel::stark_fraction;
    throw std::invalid_argument("unknown error channel: " + std::string(name));
}

std::string_view error_channel_name(ErrorChannel channel) {
    switch (channel) {
        case ErrorChannel::timing: return "timing";
        case ErrorChannel::detuning_static: return "detuning";
        case ErrorChannel::drift_rate: return "drift";
        case ErrorChannel::coupling: return "coupling";
        case ErrorChannel::stark_fraction: return "stark";
    }
    return "?";
}

namespace {

void set_channel(ErrorModel& err, ErrorChannel channel, double value) {
    switch (channel) {
        case ErrorChannel::timing: err.timing = value; break;
        case ErrorChannel::detuning_static: err.detuning_static = value; break;
        case ErrorChannel::drift_rate: err.drift_rate = value; break;
        case ErrorChannel::coupling: err.coupling = value; break;
        case ErrorChannel::stark_fraction: err.stark_fraction = value; break;
    }
}

}  // namespace

void AxisSpec::validate() const {
    if (points < 2) throw std::invalid_argument("AxisSpec: points must be >= 2");
    if (!(from < to)) throw std::invalid_argument("AxisSpec: from must be < to");
}

double AxisSpec::value_at(int i) const {
    return from + (to - from) * static_cast<double>(i) / static_cast<double>(points - 1);
}

GateSequence SequenceSpec::build() const {
    if (!preset.empty()) {
        if (preset != "yb171") throw std::invalid_argument("unknown preset: " + preset);
        return to_natural_units(yb171_preset()).sequence;
    }
    const double th = theta > 0.0 ? theta : pi / 4.0;
    const double e = eps > 0.0 ? eps : shape_preset(shape).default_eps;
    const auto win = window ? *window : default_window(shape, kind);
    return build_sequence(kind, th, shape, e, win);
}

SweepResult run_sweep(const SweepSpec& spec) {
    spec.axis1.validate();
    if (spec.axis2) spec.axis2->validate();
    spec.settings.validate();

    const GateSequence seq = spec.sequence.build();

    bool stark_in_play = spec.fixed.stark_fraction != 0.0;
    for (const AxisSpec* axis : {&spec.axis1, spec.axis2 ? &*spec.axis2 : nullptr}) {
        if (axis && axis->channel == ErrorChannel::stark_fraction &&
            (axis->from != 0.0 || axis->to != 0.0))
            stark_in_play = true;
    }
    ErrorModel representative = spec.fixed;
    if (stark_in_play && representative.stark_fraction == 0.0)
        representative.stark_fraction = 1.0;
    const int n_fock = spec.n_fock > 0 ? spec.n_fock : default_n_fock(seq, representative);
    const HilbertConfig cfg{n_fock};

    const int n1 = spec.axis1.points;
    const int n2 = spec.axis2 ? spec.axis2->points : 1;
    const int total = n1 * n2;

    const Eigen::Matrix4cd target_spin = target_xx(seq.theta_total);
    Vector target_state = Vector::Zero(cfg.total_dim());
    target_state(0) = std::cos(seq.theta_total);
    target_state(3 * cfg.n_fock) = imag_unit * std::sin(seq.theta_total);

    SweepResult result;
    result.rows.resize(static_cast<std::size_t>(total));
    result.axis_names.emplace_back(error_channel_name(spec.axis1.channel));
    if (spec.axis2) result.axis_names.emplace_back(error_channel_name(spec.axis2->channel));

    std::atomic<int> cursor{0};
    std::atomic<int> failures{0};

    const auto worker = [&]() {
        for (;;) {
            const int idx = cursor.fetch_add(1);
            if (idx >= total) return;
            const int i1 = idx / n2;
            const int i2 = idx % n2;

            ErrorModel err = spec.fixed;
            set_channel(err, spec.axis1.channel, spec.axis1.value_at(i1));
            SweepRow row;
            row.axis_values.push_back(spec.axis1.value_at(i1));
            if (spec.axis2) {
                set_channel(err, spec.axis2->channel, spec.axis2->value_at(i2));
                row.axis_values.push_back(spec.axis2->value_at(i2));
            }

            try {
                if (spec.metric == FidelityReport::Kind::gate) {
                    const Eigen::Matrix4cd block =
                        vacuum_block_numeric(seq, err, spec.settings, cfg);
                    const FidelityReport report = gate_fidelity_block(target_spin, block);
                    row.fidelity = report.fidelity;
                    row.infidelity = report.infidelity;
                } else {
                    Vector psi = Vector::Zero(cfg.total_dim());
                    psi(0) = 1.0;  // |00> (x) |0m>
                    psi = evolve_sequence(psi, seq, err, spec.settings, cfg);
                    const FidelityReport report = state_infidelity(target_state, psi);
                    row.fidelity = report.fidelity;
                    row.infidelity = report.infidelity;
                }
            } catch (const IntegrationError&) {
                row.failed = true;
                row.fidelity = row.infidelity = std::nan("");
                failures.fetch_add(1);
            }
            result.rows[static_cast<std::size_t>(idx)] = std::move(row);
        }
    };

    const int n_threads = std::max(1, spec.threads);
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    result.failures = failures.load();
    if (10 * result.failures > total)
        throw std::runtime_error("run_sweep: more than 10% of grid points failed");

    const std::string manifest = sequence_manifest(seq);
    std::ostringstream settings_key;
    settings_key << spec.settings.rel_tol << '|' << spec.settings.abs_tol << '|'
                 << spec.settings.max_step << '|' << spec.settings.guard_band << '|' << n_fock;

    result.metadata = {
        {"format_version", "1"},
        {"sequence",
         spec.sequence.preset.empty() ? spec.sequence.kind + "/" + spec.sequence.shape
                                      : "preset:" + spec.sequence.preset},
        {"metric", spec.metric == FidelityReport::Kind::gate ? "gate" : "state"},
        {"n_fock", std::to_string(n_fock)},
        {"rel_tol", format_g(spec.settings.rel_tol)},
        {"abs_tol", format_g(spec.settings.abs_tol)},
        {"settings_hash", "0x" + [&] {
             char buf[20];
             std::snprintf(buf, sizeof buf, "%016llx",
                           static_cast<unsigned long long>(fnv1a(settings_key.str())));
             return std::string(buf);
         }()},
        {"manifest_digest", "0x" + [&] {
             char buf[20];
             std::snprintf(buf, sizeof buf, "%016llx",
                           static_cast<unsigned long long>(fnv1a(manifest)));
             return std::string(buf);
         }()},
        {"failed_points", std::to_string(result.failures)},
    };
    return result;
}

void write_csv(const SweepResult& result, std::ostream& out) {
    for (const auto& [key, value] : result.metadata) out << "# " << key << '=' << value << '\n';
    out << "# columns=";
    for (const auto& name : result.axis_names) out << name << ',';
    out << "fidelity,infidelity\n";
    for (const SweepRow& row : result.rows) {
        for (double v : row.axis_values) out << format_g(v) << ',';
        if (row.failed) {
            out << "nan,nan\n";
        } else {
            out << format_g(row.fidelity) << ',' << format_g(row.infidelity) << '\n';
        }
    }
}

void write_csv(const SweepResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    write_csv(result, out);
    out.flush();
    if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

namespace {

AxisSpec parse_axis(std::string_view text) {
    // channel:from:to:points
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 4)
        throw std::invalid_argument("axis must be 'channel:from:to:points': " +
                                    std::string(text));
    AxisSpec axis;
    axis.channel = parse_error_channel(trim(parts[0]));
    axis.from = parse_double_strict(parts[1], "axis from");
    axis.to = parse_double_strict(parts[2], "axis to");
    axis.points = static_cast<int>(parse_double_strict(parts[3], "axis points"));
    axis.validate();
    return axis;
}

}  // namespace

ErrorModel parse_error_list(std::string_view text, ErrorModel base) {
    std::string item;
    std::stringstream ss{std::string(text)};
    while (std::getline(ss, item, ',')) {
        if (trim(item).empty()) continue;
        const std::size_t eq = item.find_first_of("=:");
        if (eq == std::string::npos)
            throw std::invalid_argument("error entry must be channel=value: " + item);
        set_channel(base, parse_error_channel(trim(item.substr(0, eq))),
                    parse_double_strict(item.substr(eq + 1), "error value"));
    }
    return base;
}

SweepSpec parse_sweep_config(std::istream& in) {
    SweepSpec spec;
    bool have_version = false, have_axis1 = false;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));

        if (key == "format_version") {
            if (value != "1")
                throw std::invalid_argument("unsupported config format_version: " + value);
            have_version = true;
        } else if (key == "sequence") {
            spec.sequence.kind = value;
        } else if (key == "shape") {
            spec.sequence.shape = value;
        } else if (key == "theta") {
            spec.sequence.theta = parse_angle_expr(value);
        } else if (key == "eps") {
            spec.sequence.eps = parse_angle_expr(value);
        } else if (key == "window") {
            spec.sequence.window = parse_window_expr(value);
        } else if (key == "preset") {
            spec.sequence.preset = value;
        } else if (key == "metric") {
            if (value == "gate") spec.metric = FidelityReport::Kind::gate;
            else if (value == "state") spec.metric = FidelityReport::Kind::state;
            else throw std::invalid_argument("metric must be gate or state");
        } else if (key == "n_fock") {
            spec.n_fock = static_cast<int>(parse_double_strict(value, "n_fock"));
        } else if (key == "rel_tol") {
            spec.settings.rel_tol = parse_double_strict(value, "rel_tol");
        } else if (key == "abs_tol") {
            spec.settings.abs_tol = parse_double_strict(value, "abs_tol");
        } else if (key == "max_step") {
            spec.settings.max_step = parse_double_strict(value, "max_step");
        } else if (key == "threads") {
            spec.threads = static_cast<int>(parse_double_strict(value, "threads"));
        } else if (key == "axis1") {
            spec.axis1 = parse_axis(value);
            have_axis1 = true;
        } else if (key == "axis2") {
            spec.axis2 = parse_axis(value);
        } else if (key == "fixed") {
            spec.fixed = parse_error_list(value, spec.fixed);
        } else if (key == "out") {
            spec.output_path = value;
        } else {
            throw std::invalid_argument("unknown config key: " + key);
        }
    }
    if (!have_version)
        throw std::invalid_argument("config is missing the format_version key");
    if (!have_axis1) throw std::invalid_argument("config is missing axis1");
    return spec;
}

SweepSpec parse_sweep_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    return parse_sweep_config(in);
}

}  // namespace msgate
