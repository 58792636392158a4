#pragma once

#include "butler/antenna.hpp"
#include "butler/array.hpp"
#include "butler/microstrip.hpp"
#include "butler/network.hpp"
#include "butler/touchstone.hpp"
#include "butler/units.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace butler::report {

struct DesignInputs {
    double frequency = 5.2e9;
    microstrip::Substrate substrate{4.9, 1.6e-3};
    double r_edge = antenna::kReferenceEdgeResistance;
    double r_target = 50.0;
};

struct LineRow {
    std::string name;
    microstrip::MicrostripLineSpec line;
    microstrip::WidthBranch branch = microstrip::WidthBranch::wide;
};

struct ExcitationRow {
    std::string port;
    std::vector<double> magnitude_db;
    std::vector<double> phase_deg;
    double progression_deg = 0.0;
};

struct BeamRow {
    std::string port;
    double progression_deg = 0.0;
    double predicted_angle_deg = 0.0; // from the progression, sin(theta) = -alpha/(beta d)
    double peak_angle_deg = 0.0;      // from an array-factor scan
};

struct DesignReport {
    DesignInputs inputs;
    std::vector<LineRow> lines;
    antenna::PatchDims patch;
    network::DeviceCensus census;
    std::vector<std::string> external_ports;
    double element_spacing = 0.0;
    std::vector<ExcitationRow> excitation;
    std::vector<BeamRow> beams;
};

/// Closed-form dimensions of every line and the patch, plus the ideal network's
/// excitations and beams at the design frequency (d = lambda0/2).
DesignReport build_design_report(const DesignInputs& inputs);

/// Stable JSON form: lengths in mm, angles in degrees, 9 significant digits.
nlohmann::ordered_json to_json(const DesignReport& report);

/// Human-readable tables.
std::string to_text(const DesignReport& report);

std::vector<ExcitationRow> excitation_rows(const std::vector<network::ExcitationResult>& results);

/// Beam table for a set of excitations: predicted direction from each measured
/// progression and the peak of the corresponding array-factor scan.
std::vector<BeamRow> beam_rows(const std::vector<network::ExcitationResult>& results,
                               const array::ArrayGeometry& geometry, antenna::ElementModel element,
                               double grid_step_deg = 0.05);

/// Per-input coupling table over a sweep: frequency_hz then dB / deg of every
/// array port.
std::string excitation_csv(const FrequencySweep& sweep, const network::Netlist& net, int input_port);

std::string beam_csv(const std::vector<BeamRow>& rows);

std::string pattern_csv(const array::PatternCut& cut);

// ---------------------------------------------------------------------------
// Composite runs behind the CLI

// Element spacing choice: lambda0/2 at the design frequency, the patch width plus
// the 3.4 mm gap of the reference layout, or an explicit length.
struct Spacing {
    enum class Kind { half_wave, patch_gap, explicit_length } kind = Kind::half_wave;
    double length = 0.0;

    static Spacing parse(const std::string& text);
    double resolve(double f0, const microstrip::Substrate& substrate) const;
};

inline constexpr double kReferencePatchGap = 3.4e-3;

struct ButlerRunOptions {
    Fidelity fidelity = Fidelity::ideal;
    double f0 = 5.2e9;
    microstrip::Substrate substrate{4.9, 1.6e-3};
    SweepSpec sweep{4.8e9, 5.6e9, 81, FrequencyUnit::GHz};
    std::vector<std::string> ports = network::kButlerInputLabels;
    touchstone::Format format = touchstone::Format::RI;
    std::filesystem::path out_dir = ".";
    Spacing spacing;
    antenna::ElementModel element = antenna::ElementModel::cosine;
    double grid_step_deg = 0.05;
};

struct ButlerRunResult {
    std::vector<std::filesystem::path> files;
    std::vector<BeamRow> beams;
    std::vector<ExcitationRow> excitation_at_f0;
};

/// Writes butler_<fidelity>.s8p over the sweep, excitation_<port>.csv per selected
/// port, pattern_<port>.csv at f0, and beams.csv.
ButlerRunResult run_butler(const ButlerRunOptions& options);

struct PatternOptions {
    Fidelity fidelity = Fidelity::ideal;
    double f0 = 5.2e9;
    double frequency = 5.2e9; // evaluation frequency
    microstrip::Substrate substrate{4.9, 1.6e-3};
    std::string port = "1R";  // or "all" for the incoherent overlay
    Spacing spacing;
    antenna::ElementModel element = antenna::ElementModel::cosine;
    double grid_step_deg = 0.05;
    bool normalize = true;
};

array::PatternCut butler_pattern(const PatternOptions& options);

antenna::ElementModel element_model_from_string(const std::string& text);

} // namespace butler::report
