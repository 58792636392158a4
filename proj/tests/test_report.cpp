#include "butler/constants.hpp"
#include "butler/report.hpp"

#include "doctest.h"

#include <fstream>
#include <sstream>

using namespace butler;
using namespace butler::report;

namespace {

std::vector<std::vector<double>> read_csv_numbers(std::istream& in, std::string& header)
{
    std::getline(in, header);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

} // namespace

TEST_SUITE("report") {

TEST_CASE("design report contents")
{
    const auto r = build_design_report({});
    REQUIRE(r.lines.size() == 4);
    CHECK(r.lines[0].name == "hybrid_main_50");
    CHECK(r.lines[0].line.width_w == doctest::Approx(2.81972838664866e-3).epsilon(1e-12));
    CHECK(r.lines[1].line.z0 == doctest::Approx(50 / std::sqrt(2.0)));
    CHECK(r.lines[2].line.length_l == doctest::Approx(r.lines[0].line.length_l / 2).epsilon(1e-14));
    CHECK(r.lines[3].line.length_l == doctest::Approx(3 * r.lines[0].line.length_l).epsilon(1e-14));
    CHECK(r.patch.inset_y0 == doctest::Approx(0.00462530786609334).epsilon(1e-12));
    CHECK(r.census.hybrids == 4);
    CHECK(r.external_ports.size() == 8);
    CHECK(r.element_spacing == doctest::Approx(kSpeedOfLight / 5.2e9 / 2));
    REQUIRE(r.beams.size() == 4);
    for (const auto& b : r.beams)
        CHECK(std::abs(b.predicted_angle_deg - b.peak_angle_deg) < 0.2);
    REQUIRE(r.excitation.size() == 4);
    for (const auto& e : r.excitation)
        for (const double db : e.magnitude_db)
            CHECK(db == doctest::Approx(-6.0206).epsilon(1e-5));
}

TEST_CASE("design report JSON is stable")
{
    const auto a = to_json(build_design_report({})).dump(2);
    const auto b = to_json(build_design_report({})).dump(2);
    CHECK(a == b);
    const auto doc = nlohmann::json::parse(a);
    CHECK(doc.at("patch").at("width_mm").get<double>() == doctest::Approx(16.7832613));
    CHECK(doc.at("microstrip").size() == 4);
    CHECK(doc.at("beams").size() == 4);
    CHECK(to_text(build_design_report({})).find("Inset-fed patch") != std::string::npos);
}

TEST_CASE("spacing options")
{
    const microstrip::Substrate fr4{4.9, 1.6e-3};
    CHECK(Spacing::parse("half-wave").resolve(5.2e9, fr4) == doctest::Approx(kSpeedOfLight / 5.2e9 / 2));
    CHECK(Spacing::parse("patch-gap").resolve(5.2e9, fr4) ==
          doctest::Approx(0.0167832612786306 + kReferencePatchGap).epsilon(1e-12));
    CHECK(Spacing::parse("25mm").resolve(5.2e9, fr4) == doctest::Approx(0.025));
    CHECK_THROWS(Spacing::parse("wide"));
    CHECK(element_model_from_string("iso") == antenna::ElementModel::isotropic);
    CHECK(element_model_from_string("cosine") == antenna::ElementModel::cosine);
    CHECK_THROWS(element_model_from_string("yagi"));
}

TEST_CASE("port 1R pattern matches the golden cut")
{
    std::ifstream f(BUTLER_GOLDEN_DIR "/pattern_1R.csv");
    REQUIRE(f.good());
    std::string golden_header;
    const auto golden = read_csv_numbers(f, golden_header);

    std::istringstream produced(pattern_csv(butler_pattern({})));
    std::string header;
    const auto rows = read_csv_numbers(produced, header);
    CHECK(header == golden_header);
    REQUIRE(rows.size() == golden.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t k = 0; k < 2; ++k)
            CHECK(std::abs(rows[i][k] - golden[i][k]) <= 1e-8 * std::max(1.0, std::abs(golden[i][k])));
}

TEST_CASE("pattern options")
{
    PatternOptions o;
    o.port = "all";
    const auto all = butler_pattern(o);
    CHECK(all.input_port_label.find("incoherent") != std::string::npos);
    o.port = "X9";
    CHECK_THROWS(butler_pattern(o));
    o.port = "2R";
    o.frequency = 5.0e9;
    o.fidelity = Fidelity::circuit;
    o.element = antenna::ElementModel::isotropic;
    const auto m = array::pattern_metrics(butler_pattern(o));
    CHECK(rad2deg(m.peak_angle) > 40.0);
}

TEST_CASE("butler run writes every artefact")
{
    const auto dir = std::filesystem::temp_directory_path() / "butler_report_test";
    std::filesystem::remove_all(dir);
    ButlerRunOptions o;
    o.out_dir = dir;
    o.sweep = {5.0e9, 5.4e9, 5, FrequencyUnit::GHz};
    o.ports = {"1R", "1L"};
    o.fidelity = Fidelity::circuit;
    const auto res = run_butler(o);
    for (const char* name : {"butler_circuit.s8p", "excitation_1R.csv", "excitation_1L.csv",
                             "pattern_1R.csv", "pattern_1L.csv", "beams.csv"})
        CHECK(std::filesystem::exists(dir / name));
    CHECK_FALSE(std::filesystem::exists(dir / "pattern_2L.csv"));
    CHECK(res.beams.size() == 2);
    const auto data = touchstone::read_file(dir / "butler_circuit.s8p");
    CHECK(data.sweep.size() == 5);
    CHECK(data.sweep[2].s.max_abs_difference(
              network::interconnect(network::build_butler_4x4(Fidelity::circuit, 5.2e9, o.substrate), 5.2e9)) < 1e-11);
    std::filesystem::remove_all(dir);
}

}
