#include "butler/report.hpp"

#include "butler/errors.hpp"
#include "butler/format.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace butler::report {

namespace {

using nlohmann::ordered_json;

double mm(double meters)
{
    return round_sig(meters * 1e3);
}

double r9(double v)
{
    return round_sig(v);
}

std::string branch_name(microstrip::WidthBranch b)
{
    return b == microstrip::WidthBranch::wide ? "wide" : "narrow";
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot open '" + path.string() + "' for writing");
    f << text;
    if (!f)
        throw Error("failed writing '" + path.string() + "'");
}

LineRow line_row(std::string name, double z0, double phase_deg, double f0,
                 const microstrip::Substrate& substrate)
{
    LineRow row;
    row.name = std::move(name);
    row.line = microstrip::design_line(z0, deg2rad(phase_deg), f0, substrate);
    row.branch = microstrip::synthesize_width_detail(z0, substrate).branch;
    return row;
}

} // namespace

DesignReport build_design_report(const DesignInputs& in)
{
    if (!(in.frequency > 0.0))
        throw std::invalid_argument("design frequency must be positive");
    in.substrate.validate();

    DesignReport r;
    r.inputs = in;

    const double z0 = kDefaultZRef;
    try {
        r.lines.push_back(line_row("hybrid_main_50", z0, 90.0, in.frequency, in.substrate));
        r.lines.push_back(line_row("hybrid_branch_35", z0 / std::sqrt(2.0), 90.0, in.frequency, in.substrate));
        r.lines.push_back(line_row("phase_shifter_45", z0, 45.0, in.frequency, in.substrate));
        r.lines.push_back(line_row("output_equalizer_270", z0, 270.0, in.frequency, in.substrate));
    } catch (const SynthesisRangeError& e) {
        throw SynthesisRangeError(std::string("microstrip lines: ") + e.what());
    }

    try {
        r.patch = antenna::design_inset_fed_patch(in.frequency, in.substrate, in.r_edge, in.r_target);
    } catch (const Error& e) {
        throw DesignRangeError(std::string("patch antenna: ") + e.what());
    }

    const auto net = network::build_butler_4x4(Fidelity::ideal, in.frequency, in.substrate);
    r.census = network::census(net);
    for (const auto& e : net.external_ports())
        r.external_ports.push_back(e.label);

    const auto geometry = array::ArrayGeometry::half_wave(4, in.frequency);
    r.element_spacing = geometry.spacing_d;
    const auto results = network::excite_all(net, in.frequency);
    r.excitation = excitation_rows(results);
    r.beams = beam_rows(results, geometry, antenna::ElementModel::isotropic);
    return r;
}

std::vector<ExcitationRow> excitation_rows(const std::vector<network::ExcitationResult>& results)
{
    std::vector<ExcitationRow> rows;
    for (const auto& res : results) {
        ExcitationRow row;
        row.port = res.input_label;
        for (const auto& a : res.output_amplitudes) {
            row.magnitude_db.push_back(to_db20(std::abs(a)));
            row.phase_deg.push_back(rad2deg(std::arg(a)));
        }
        row.progression_deg = rad2deg(res.progression());
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<BeamRow> beam_rows(const std::vector<network::ExcitationResult>& results,
                               const array::ArrayGeometry& geometry, antenna::ElementModel element,
                               double grid_step_deg)
{
    const auto grid = array::angle_grid(grid_step_deg);
    std::vector<BeamRow> rows;
    for (const auto& res : results) {
        BeamRow row;
        row.port = res.input_label;
        row.progression_deg = rad2deg(res.progression());
        row.predicted_angle_deg = rad2deg(array::steering_angle(res.progression(), geometry));
        const auto cut = array::array_factor(res.output_amplitudes, geometry, grid, element, true,
                                             res.input_label);
        row.peak_angle_deg = rad2deg(array::pattern_metrics(cut).peak_angle);
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json to_json(const DesignReport& r)
{
    ordered_json doc;
    doc["tool"] = "butler";
    doc["inputs"] = {{"frequency_hz", r9(r.inputs.frequency)},
                     {"epsilon_r", r9(r.inputs.substrate.epsilon_r)},
                     {"height_mm", mm(r.inputs.substrate.height_h)},
                     {"edge_resistance_ohm", r9(r.inputs.r_edge)},
                     {"feed_resistance_ohm", r9(r.inputs.r_target)}};

    doc["microstrip"] = ordered_json::array();
    for (const auto& row : r.lines)
        doc["microstrip"].push_back({{"name", row.name},
                                     {"z0_ohm", r9(row.line.z0)},
                                     {"width_mm", mm(row.line.width_w)},
                                     {"length_mm", mm(row.line.length_l)},
                                     {"eps_reff", r9(row.line.eps_reff)},
                                     {"electrical_length_deg", r9(rad2deg(row.line.electrical_length))},
                                     {"formula", branch_name(row.branch)}});

    doc["patch"] = {{"width_mm", mm(r.patch.width_w)},
                    {"length_mm", mm(r.patch.length_l)},
                    {"delta_l_mm", mm(r.patch.delta_l)},
                    {"eps_reff", r9(r.patch.eps_reff)},
                    {"inset_mm", mm(r.patch.inset_y0)},
                    {"feed_line_width_mm", mm(r.patch.feed_line_width)}};

    doc["netlist"] = {{"fidelity", "ideal"},
                      {"hybrids", r.census.hybrids},
                      {"crossovers", r.census.crossovers},
                      {"phase_shifters", r.census.phase_shifters},
                      {"equalizer_lines", r.census.lines},
                      {"external_ports", r.external_ports}};

    doc["excitation"] = ordered_json::array();
    for (const auto& row : r.excitation) {
        ordered_json outs = ordered_json::array();
        for (std::size_t k = 0; k < row.magnitude_db.size(); ++k)
            outs.push_back({{"element", "A" + std::to_string(k + 1)},
                            {"magnitude_db", r9(row.magnitude_db[k])},
                            {"phase_deg", r9(row.phase_deg[k])}});
        doc["excitation"].push_back(
            {{"port", row.port}, {"progression_deg", r9(row.progression_deg)}, {"outputs", outs}});
    }

    doc["beams"] = ordered_json::array();
    for (const auto& b : r.beams)
        doc["beams"].push_back({{"port", b.port},
                                {"progression_deg", r9(b.progression_deg)},
                                {"beam_angle_deg", r9(b.predicted_angle_deg)},
                                {"array_factor_peak_deg", r9(b.peak_angle_deg)}});
    doc["element_spacing_mm"] = mm(r.element_spacing);
    return doc;
}

std::string to_text(const DesignReport& r)
{
    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf, "Design frequency %.6g GHz, er = %.6g, h = %.6g mm\n\n",
                  r.inputs.frequency / 1e9, r.inputs.substrate.epsilon_r, r.inputs.substrate.height_h * 1e3);
    os << buf;

    os << "Microstrip lines\n";
    std::snprintf(buf, sizeof buf, "  %-22s %9s %9s %9s %9s %8s\n", "line", "Z0 [ohm]", "W [mm]",
                  "L [mm]", "eps_reff", "phase");
    os << buf;
    for (const auto& row : r.lines) {
        std::snprintf(buf, sizeof buf, "  %-22s %9.2f %9.3f %9.3f %9.4f %7.1f\n", row.name.c_str(),
                      row.line.z0, row.line.width_w * 1e3, row.line.length_l * 1e3, row.line.eps_reff,
                      rad2deg(row.line.electrical_length));
        os << buf;
    }

    os << "\nInset-fed patch\n";
    std::snprintf(buf, sizeof buf,
                  "  W = %.3f mm  L = %.3f mm  dL = %.3f mm  eps_reff = %.4f\n"
                  "  inset = %.3f mm (edge %.1f ohm -> %.1f ohm)  feed width = %.3f mm\n",
                  r.patch.width_w * 1e3, r.patch.length_l * 1e3, r.patch.delta_l * 1e3, r.patch.eps_reff,
                  r.patch.inset_y0 * 1e3, r.inputs.r_edge, r.inputs.r_target, r.patch.feed_line_width * 1e3);
    os << buf;

    std::snprintf(buf, sizeof buf,
                  "\nButler network: %d hybrids, %d crossovers, %d phase shifters, %d equalizer lines\n",
                  r.census.hybrids, r.census.crossovers, r.census.phase_shifters, r.census.lines);
    os << buf;

    os << "\nExcitation at the design frequency (ideal network)\n";
    for (const auto& row : r.excitation) {
        os << "  " << row.port << ":";
        for (std::size_t k = 0; k < row.magnitude_db.size(); ++k) {
            std::snprintf(buf, sizeof buf, "  A%zu %6.2f dB %8.2f deg", k + 1, row.magnitude_db[k],
                          row.phase_deg[k]);
            os << buf;
        }
        os << '\n';
    }

    std::snprintf(buf, sizeof buf, "\nBeams (d = %.2f mm)\n", r.element_spacing * 1e3);
    os << buf;
    for (const auto& b : r.beams) {
        std::snprintf(buf, sizeof buf, "  %-3s progression %8.2f deg -> beam %7.2f deg (scan peak %7.2f deg)\n",
                      b.port.c_str(), b.progression_deg, b.predicted_angle_deg, b.peak_angle_deg);
        os << buf;
    }
    return os.str();
}

std::string excitation_csv(const FrequencySweep& sweep, const network::Netlist& net, int input_port)
{
    std::ostringstream os;
    os << "frequency_hz";
    const int n_out = static_cast<int>(net.external_ports().size()) / 2;
    for (int k = 1; k <= n_out; ++k) {
        const auto& label = net.external_ports()[static_cast<std::size_t>(n_out + k - 1)].label;
        os << ',' << label << "_db," << label << "_deg";
    }
    os << '\n';
    for (const auto& point : sweep) {
        os << format_sig(point.frequency);
        for (int k = 1; k <= n_out; ++k) {
            const Complex a = point.s.s(n_out + k, input_port);
            os << ',' << format_sig(to_db20(std::abs(a))) << ',' << format_sig(rad2deg(std::arg(a)));
        }
        os << '\n';
    }
    return os.str();
}

std::string beam_csv(const std::vector<BeamRow>& rows)
{
    std::ostringstream os;
    os << "port,progression_deg,beam_angle_deg,pattern_peak_deg\n";
    for (const auto& b : rows)
        os << b.port << ',' << format_sig(b.progression_deg) << ',' << format_sig(b.predicted_angle_deg)
           << ',' << format_sig(b.peak_angle_deg) << '\n';
    return os.str();
}

std::string pattern_csv(const array::PatternCut& cut)
{
    std::ostringstream os;
    array::write_pattern_csv(os, cut);
    return os.str();
}

Spacing Spacing::parse(const std::string& text)
{
    if (text == "half-wave")
        return {Kind::half_wave, 0.0};
    if (text == "patch-gap")
        return {Kind::patch_gap, 0.0};
    const double len = parse_length(text);
    if (!(len > 0.0))
        throw std::invalid_argument("element spacing must be positive");
    return {Kind::explicit_length, len};
}

double Spacing::resolve(double f0, const microstrip::Substrate& substrate) const
{
    switch (kind) {
    case Kind::half_wave: return kSpeedOfLight / f0 / 2.0;
    case Kind::patch_gap: return antenna::design_patch(f0, substrate).width_w + kReferencePatchGap;
    case Kind::explicit_length: return length;
    }
    return length;
}

antenna::ElementModel element_model_from_string(const std::string& text)
{
    if (text == "cos" || text == "cosine")
        return antenna::ElementModel::cosine;
    if (text == "iso" || text == "isotropic")
        return antenna::ElementModel::isotropic;
    throw std::invalid_argument("unknown element model '" + text + "' (expected cos or iso)");
}

namespace {

int input_index(const network::Netlist& net, const std::string& port)
{
    for (std::size_t i = 0; i < network::kButlerInputLabels.size(); ++i)
        if (network::kButlerInputLabels[i] == port)
            return net.external_index(port);
    throw std::invalid_argument("unknown input port '" + port + "' (expected 1R, 2L, 2R or 1L)");
}

} // namespace

ButlerRunResult run_butler(const ButlerRunOptions& o)
{
    o.sweep.validate();
    if (o.ports.empty())
        throw std::invalid_argument("no input ports selected");
    const auto net = network::build_butler_4x4(o.fidelity, o.f0, o.substrate);
    for (const auto& p : o.ports)
        (void)input_index(net, p);

    std::filesystem::create_directories(o.out_dir);
    ButlerRunResult result;

    const auto freqs = o.sweep.frequencies();
    const auto sweep = network::evaluate_sweep(net, freqs);

    touchstone::WriteOptions wo;
    wo.format = o.format;
    wo.unit = o.sweep.scale_unit;
    wo.comments = {"4x4 Butler matrix, " + to_string(o.fidelity) + " fidelity, f0 = " +
                       format_sig(o.f0) + " Hz, er = " + format_sig(o.substrate.epsilon_r) +
                       ", h = " + format_sig(o.substrate.height_h) + " m",
                   "ports: 1R 2L 2R 1L A1 A2 A3 A4"};
    const auto ts_path = o.out_dir / ("butler_" + to_string(o.fidelity) + ".s8p");
    touchstone::write_file(ts_path, sweep, 8, wo);
    result.files.push_back(ts_path);

    const auto at_f0 = network::excite_all(net, o.f0);
    result.excitation_at_f0 = excitation_rows(at_f0);

    array::ArrayGeometry geometry{4, o.spacing.resolve(o.f0, o.substrate), o.f0};
    const auto grid = array::angle_grid(o.grid_step_deg);

    std::vector<network::ExcitationResult> selected;
    for (const auto& p : o.ports) {
        const int idx = input_index(net, p);
        const auto csv_path = o.out_dir / ("excitation_" + p + ".csv");
        write_text_file(csv_path, excitation_csv(sweep, net, idx));
        result.files.push_back(csv_path);

        const auto& exc = at_f0[static_cast<std::size_t>(idx - 1)];
        const auto cut = array::array_factor(exc.output_amplitudes, geometry, grid, o.element, true, p);
        const auto pat_path = o.out_dir / ("pattern_" + p + ".csv");
        write_text_file(pat_path, pattern_csv(cut));
        result.files.push_back(pat_path);
        selected.push_back(exc);
    }

    result.beams = beam_rows(selected, geometry, o.element, o.grid_step_deg);
    const auto beam_path = o.out_dir / "beams.csv";
    write_text_file(beam_path, beam_csv(result.beams));
    result.files.push_back(beam_path);
    return result;
}

array::PatternCut butler_pattern(const PatternOptions& o)
{
    const auto net = network::build_butler_4x4(o.fidelity, o.f0, o.substrate);
    const auto results = network::excite_all(net, o.frequency);
    array::ArrayGeometry geometry{4, o.spacing.resolve(o.f0, o.substrate), o.frequency};
    const auto grid = array::angle_grid(o.grid_step_deg);

    if (o.port == "all") {
        std::vector<array::PatternCut> cuts;
        for (const auto& r : results)
            cuts.push_back(array::array_factor(r.output_amplitudes, geometry, grid, o.element, false,
                                               r.input_label));
        return array::incoherent_overlay(cuts, o.normalize);
    }
    const int idx = input_index(net, o.port);
    return array::array_factor(results[static_cast<std::size_t>(idx - 1)].output_amplitudes, geometry,
                               grid, o.element, o.normalize, o.port);
}

} // namespace butler::report
