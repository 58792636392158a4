// butler: design and simulation front end for the 4x4 Butler matrix toolkit.
//
//   butler design   --freq 5.2GHz --er 4.9 --h 1.6mm [--out report.json]
//   butler butler   --fidelity ideal|circuit --f-start 4.8GHz --f-stop 5.6GHz --points 81
//   butler pattern  --port 1R|2L|2R|1L|all [--element cos|iso] [--out pattern.csv]
//   butler touchstone convert IN OUT [--format RI|MA|DB] [--unit GHz]
//
// Any subcommand accepts --scenario FILE.json whose keys are long option names;
// command-line flags override the file. BUTLER_OUT_DIR sets the default output
// directory.

#include "butler/errors.hpp"
#include "butler/format.hpp"
#include "butler/report.hpp"
#include "butler/touchstone.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace butler;

std::filesystem::path default_out_dir()
{
    if (const char* env = std::getenv("BUTLER_OUT_DIR"); env && *env)
        return env;
    return ".";
}

std::string one_line(std::string s)
{
    for (char& c : s)
        if (c == '\n' || c == '\r')
            c = ' ';
    while (!s.empty() && s.back() == ' ')
        s.pop_back();
    return s;
}

// Turns the scenario document into "--key value" tokens.
std::vector<std::string> scenario_args(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw Error("cannot open scenario file '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw Error("scenario file '" + path + "' is not valid JSON: " + one_line(e.what()));
    }
    if (!doc.is_object())
        throw Error("scenario file '" + path + "' must hold a JSON object");

    std::vector<std::string> args;
    for (const auto& [key, value] : doc.items()) {
        const std::string flag = "--" + key;
        if (value.is_boolean()) {
            if (value.get<bool>())
                args.push_back(flag);
        } else if (value.is_string()) {
            args.push_back(flag);
            args.push_back(value.get<std::string>());
        } else if (value.is_number()) {
            args.push_back(flag);
            args.push_back(value.dump());
        } else if (value.is_array()) {
            for (const auto& v : value) {
                args.push_back(flag);
                args.push_back(v.is_string() ? v.get<std::string>() : v.dump());
            }
        } else {
            throw Error("scenario key '" + key + "' has an unsupported value");
        }
    }
    return args;
}

// Splices scenario-file options in front of the user's own options so that the
// latter win (every option keeps its last value).
std::vector<std::string> expand_scenario(std::vector<std::string> args)
{
    for (std::size_t i = 1; i < args.size(); ++i) {
        std::string path;
        std::size_t span = 0;
        if (args[i] == "--scenario" && i + 1 < args.size()) {
            path = args[i + 1];
            span = 2;
        } else if (args[i].rfind("--scenario=", 0) == 0) {
            path = args[i].substr(11);
            span = 1;
        }
        if (span == 0)
            continue;

        args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i + span));
        std::size_t insert_at = 2;
        if (args.size() > 2 && args[1] == "touchstone")
            insert_at = 3;
        insert_at = std::min(insert_at, args.size());
        const auto extra = scenario_args(path);
        args.insert(args.begin() + static_cast<long>(insert_at), extra.begin(), extra.end());
        break;
    }
    return args;
}

struct CommonDesign {
    std::string freq = "5.2GHz";
    double er = 4.9;
    std::string h = "1.6mm";

    microstrip::Substrate substrate() const { return {er, parse_length(h)}; }
    double frequency() const { return parse_frequency(freq); }
};

void add_common(CLI::App* cmd, CommonDesign& c)
{
    cmd->add_option("--freq", c.freq, "Design frequency, e.g. 5.2GHz")->capture_default_str();
    cmd->add_option("--er", c.er, "Substrate relative permittivity")->capture_default_str();
    cmd->add_option("--h", c.h, "Substrate height, e.g. 1.6mm")->capture_default_str();
}

int run(int argc, char** argv)
{
    std::vector<std::string> raw(argv, argv + argc);
    const auto args = expand_scenario(raw);

    CLI::App app{"Butler matrix beamforming network design and simulation"};
    // "--h" is the substrate height, so help is long-form only.
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    // design
    auto* design = app.add_subcommand("design", "Closed-form line and patch dimensions, JSON report");
    CommonDesign design_args;
    add_common(design, design_args);
    double r_edge = antenna::kReferenceEdgeResistance;
    std::string design_out;
    design->add_option("--r-edge", r_edge, "Patch edge input resistance [ohm]")->capture_default_str();
    design->add_option("--out", design_out, "Report path (default <outdir>/design_report.json)");

    // butler
    auto* butler_cmd = app.add_subcommand("butler", "Simulate the composite network over a sweep");
    CommonDesign butler_args;
    add_common(butler_cmd, butler_args);
    std::string fidelity = "ideal", f_start = "4.8GHz", f_stop = "5.6GHz", unit = "GHz", format = "RI";
    std::string spacing = "half-wave", element = "cos", out_dir;
    int points = 81;
    double grid = 0.05;
    std::vector<std::string> ports{"all"};
    butler_cmd->add_option("--fidelity", fidelity, "ideal or circuit")->capture_default_str();
    butler_cmd->add_option("--f-start", f_start)->capture_default_str();
    butler_cmd->add_option("--f-stop", f_stop)->capture_default_str();
    butler_cmd->add_option("--points", points)->capture_default_str();
    butler_cmd->add_option("--unit", unit, "Touchstone frequency unit")->capture_default_str();
    butler_cmd->add_option("--format", format, "Touchstone format RI, MA or DB")->capture_default_str();
    butler_cmd->add_option("--port", ports, "Input ports (1R 2L 2R 1L or all)")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    butler_cmd->add_option("--spacing", spacing, "half-wave, patch-gap or a length")->capture_default_str();
    butler_cmd->add_option("--element", element, "Element pattern: cos or iso")->capture_default_str();
    butler_cmd->add_option("--grid", grid, "Pattern angle step [deg]")->capture_default_str();
    butler_cmd->add_option("--out-dir", out_dir, "Output directory (default $BUTLER_OUT_DIR or .)");

    // pattern
    auto* pattern = app.add_subcommand("pattern", "Far-field cut for one input port");
    CommonDesign pattern_args;
    add_common(pattern, pattern_args);
    std::string pat_fidelity = "ideal", pat_port = "1R", pat_spacing = "half-wave", pat_element = "cos";
    std::string eval_freq, pat_out;
    double pat_grid = 0.05;
    bool no_normalize = false;
    pattern->add_option("--fidelity", pat_fidelity)->capture_default_str();
    pattern->add_option("--port", pat_port, "1R, 2L, 2R, 1L or all (incoherent overlay)")->capture_default_str();
    pattern->add_option("--eval-freq", eval_freq, "Evaluation frequency (default: design frequency)");
    pattern->add_option("--spacing", pat_spacing)->capture_default_str();
    pattern->add_option("--element", pat_element)->capture_default_str();
    pattern->add_option("--grid", pat_grid)->capture_default_str();
    pattern->add_flag("--no-normalize", no_normalize, "Keep absolute array-factor magnitudes");
    pattern->add_option("--out", pat_out, "CSV path (default <outdir>/pattern_<port>.csv)");

    // touchstone convert
    auto* ts = app.add_subcommand("touchstone", "Touchstone utilities");
    ts->require_subcommand(1);
    auto* convert = ts->add_subcommand("convert", "Rewrite a Touchstone file in another format/unit");
    std::string ts_in, ts_out, ts_format, ts_unit;
    convert->add_option("input", ts_in, "Source .sNp")->required();
    convert->add_option("output", ts_out, "Destination .sNp")->required();
    convert->add_option("--format", ts_format, "RI, MA or DB (default: keep)");
    convert->add_option("--unit", ts_unit, "Hz, kHz, MHz or GHz (default: keep)");

    std::vector<const char*> cargs;
    for (const auto& a : args)
        cargs.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << one_line(e.what()) << '\n';
        return e.get_exit_code() ? e.get_exit_code() : 2;
    }

    const auto out_base = default_out_dir();

    if (*design) {
        report::DesignInputs in;
        in.frequency = design_args.frequency();
        in.substrate = design_args.substrate();
        in.r_edge = r_edge;
        const auto rep = report::build_design_report(in);
        const std::filesystem::path path =
            design_out.empty() ? out_base / "design_report.json" : std::filesystem::path(design_out);
        if (path.has_parent_path())
            std::filesystem::create_directories(path.parent_path());
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw Error("cannot open '" + path.string() + "' for writing");
        f << report::to_json(rep).dump(2) << '\n';
        if (!f)
            throw Error("failed writing '" + path.string() + "'");
        std::cout << report::to_text(rep) << "\nreport written to " << path.string() << '\n';
        return 0;
    }

    if (*butler_cmd) {
        report::ButlerRunOptions o;
        o.fidelity = fidelity_from_string(fidelity);
        o.f0 = butler_args.frequency();
        o.substrate = butler_args.substrate();
        o.sweep = {parse_frequency(f_start), parse_frequency(f_stop), points,
                   frequency_unit_from_string(unit)};
        o.format = touchstone::format_from_string(format);
        if (!(ports.size() == 1 && ports.front() == "all"))
            o.ports = ports;
        o.out_dir = out_dir.empty() ? out_base : std::filesystem::path(out_dir);
        o.spacing = report::Spacing::parse(spacing);
        o.element = report::element_model_from_string(element);
        o.grid_step_deg = grid;
        const auto res = report::run_butler(o);

        for (const auto& row : res.excitation_at_f0) {
            std::cout << row.port << ":";
            for (std::size_t k = 0; k < row.magnitude_db.size(); ++k)
                std::cout << " A" << k + 1 << ' ' << format_sig(row.magnitude_db[k], 5) << " dB / "
                          << format_sig(std::abs(row.phase_deg[k]) < 1e-9 ? 0.0 : row.phase_deg[k], 5)
                          << " deg";
            std::cout << '\n';
        }
        std::cout << report::beam_csv(res.beams);
        for (const auto& p : res.files)
            std::cout << "wrote " << p.string() << '\n';
        return 0;
    }

    if (*pattern) {
        report::PatternOptions o;
        o.fidelity = fidelity_from_string(pat_fidelity);
        o.f0 = pattern_args.frequency();
        o.frequency = eval_freq.empty() ? o.f0 : parse_frequency(eval_freq);
        o.substrate = pattern_args.substrate();
        o.port = pat_port;
        o.spacing = report::Spacing::parse(pat_spacing);
        o.element = report::element_model_from_string(pat_element);
        o.grid_step_deg = pat_grid;
        o.normalize = !no_normalize;
        const auto cut = report::butler_pattern(o);
        const std::filesystem::path path =
            pat_out.empty() ? out_base / ("pattern_" + pat_port + ".csv") : std::filesystem::path(pat_out);
        if (path.has_parent_path())
            std::filesystem::create_directories(path.parent_path());
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw Error("cannot open '" + path.string() + "' for writing");
        f << report::pattern_csv(cut);
        if (!f)
            throw Error("failed writing '" + path.string() + "'");

        std::cout << cut.input_port_label << ":";
        try {
            const auto m = array::pattern_metrics(cut);
            std::cout << " peak " << format_sig(rad2deg(m.peak_angle), 6) << " deg, HPBW "
                      << format_sig(rad2deg(m.hpbw), 6) << " deg";
            if (m.sidelobe_db)
                std::cout << ", sidelobe " << format_sig(*m.sidelobe_db, 5) << " dB";
        } catch (const DegeneratePatternError&) {
            std::cout << " flat pattern";
        }
        std::cout << "\nwrote " << path.string() << '\n';
        return 0;
    }

    if (*convert) {
        const auto data = touchstone::read_file(ts_in);
        touchstone::WriteOptions wo;
        wo.format = ts_format.empty() ? data.format : touchstone::format_from_string(ts_format);
        wo.unit = ts_unit.empty() ? data.unit : frequency_unit_from_string(ts_unit);
        wo.comments = {"converted from " + std::filesystem::path(ts_in).filename().string()};
        touchstone::write_file(ts_out, data.sweep, data.n_ports, wo);
        std::cout << "wrote " << ts_out << " (" << data.n_ports << " ports, " << data.sweep.size()
                  << " points)\n";
        return 0;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << one_line(e.what()) << '\n';
        return 1;
    }
}
