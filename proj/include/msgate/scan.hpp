#ifndef MSGATE_SCAN_HPP
#define MSGATE_SCAN_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "msgate/composite.hpp"
#include "msgate/dynamics.hpp"

namespace msgate {

enum class ErrorChannel { timing, detuning_static, drift_rate, coupling, stark_fraction };

ErrorChannel parse_error_channel(std::string_view name);
std::string_view error_channel_name(ErrorChannel channel);

struct AxisSpec {
    ErrorChannel channel = ErrorChannel::coupling;
    double from = 0.0;
    double to = 0.0;
    int points = 2;

    void validate() const;  // points >= 2, from < to
    double value_at(int i) const;
};

// How to obtain the sequence under test: a builder recipe or a preset.
struct SequenceSpec {
    std::string kind = "single";  // single | B1 | B2
    std::string shape = "const";
    double theta = 0.0;           // 0 -> pi/4
    double eps = 0.0;             // 0 -> shape default
    std::optional<std::pair<double, double>> window;
    std::string preset;           // non-empty overrides the builder fields

    GateSequence build() const;
};

struct SweepSpec {
    AxisSpec axis1;
    std::optional<AxisSpec> axis2;
    ErrorModel fixed;
    SequenceSpec sequence;
    FidelityReport::Kind metric = FidelityReport::Kind::state;
    std::string output_path;
    int n_fock = 0;  // 0 -> default_n_fock
    IntegratorSettings settings;
    int threads = 1;
};

struct SweepRow {
    std::vector<double> axis_values;
    double fidelity = 0.0;
    double infidelity = 0.0;
    bool failed = false;
};

struct SweepResult {
    std::vector<SweepRow> rows;                    // lexicographic in axis indices
    std::vector<std::string> axis_names;
    std::vector<std::pair<std::string, std::string>> metadata;
    int failures = 0;
};

// Evaluates the metric at every grid point.  Points are independent and run
// on `threads` workers; output ordering is deterministic regardless of the
// execution order.  Individual integration failures are recorded as failed
// rows; more than 10% failures aborts the sweep.
SweepResult run_sweep(const SweepSpec& spec);

// '#'-prefixed key=value metadata, then CSV rows with 12 significant digits,
// '.' decimal point, newline-terminated UTF-8.  Reruns are byte-identical.
void write_csv(const SweepResult& result, const std::string& path);
void write_csv(const SweepResult& result, std::ostream& out);

// Plain-text key=value config with a format_version key.
SweepSpec parse_sweep_config(std::istream& in);
SweepSpec parse_sweep_config_file(const std::string& path);

// Subcommands: simulate, sweep1d, sweep2d, closure-phase, calibrate, manifest.
int cli_main(int argc, const char* const* argv);

// Angle-expression parser for CLI values: "0.5", "pi", "2pi", "pi/4", "3pi/2".
double parse_angle_expr(std::string_view text);
std::pair<double, double> parse_window_expr(std::string_view text);

// "channel=value[,channel=value...]" applied on top of `base`.
ErrorModel parse_error_list(std::string_view text, ErrorModel base = {});

}  // namespace msgate

#endif
