#include "butler/errors.hpp"
#include "butler/touchstone.hpp"

#include "doctest.h"

#include <random>
#include <sstream>

using namespace butler;
using namespace butler::touchstone;

namespace {

FrequencySweep random_sweep(int n_ports, int points, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    FrequencySweep sweep;
    for (int i = 0; i < points; ++i) {
        ScatteringMatrix s(n_ports);
        for (int r = 0; r < n_ports; ++r)
            for (int c = 0; c < n_ports; ++c)
                s(r, c) = Complex(u(rng), u(rng));
        // A few awkward magnitudes: tiny, exactly zero, negative reals.
        if (i == 1)
            s(0, 0) = Complex(-3.2e-7, 0.0);
        if (i == 2 && n_ports > 1)
            s(1, 0) = 0.0;
        sweep.push_back({1.234567e9 + i * 0.0713e9, s});
    }
    return sweep;
}

double max_rel_diff(const FrequencySweep& a, const FrequencySweep& b)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i].frequency - b[i].frequency) / a[i].frequency);
        const auto& x = a[i].s.matrix();
        const auto& y = b[i].s.matrix();
        for (int r = 0; r < x.rows(); ++r)
            for (int c = 0; c < x.cols(); ++c)
                worst = std::max(worst, std::abs(x(r, c) - y(r, c)) / std::max(1.0, std::abs(x(r, c))));
    }
    return worst;
}

Data parse(const std::string& text, std::optional<int> n = std::nullopt)
{
    std::istringstream in(text);
    return read(in, n);
}

int parse_error_line(const std::string& text, std::optional<int> n = std::nullopt)
{
    try {
        parse(text, n);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

} // namespace

TEST_SUITE("touchstone") {

TEST_CASE("round trip across formats, units and port counts")
{
    for (const int n : {1, 2, 3, 4, 8}) {
        const auto sweep = random_sweep(n, 6, 100u + n);
        for (const auto fmt : {Format::RI, Format::MA, Format::DB}) {
            for (const auto unit : {FrequencyUnit::Hz, FrequencyUnit::kHz, FrequencyUnit::MHz, FrequencyUnit::GHz}) {
                std::ostringstream out;
                write(out, sweep, n, {fmt, unit, {}});
                const auto data = parse(out.str(), n);
                CAPTURE(n);
                CAPTURE(to_string(fmt));
                CAPTURE(to_string(unit));
                CHECK(data.n_ports == n);
                CHECK(data.format == fmt);
                CHECK(data.unit == unit);
                CHECK(data.z_ref == 50.0);
                REQUIRE(data.sweep.size() == sweep.size());
                CHECK(max_rel_diff(sweep, data.sweep) < 1e-9);
            }
        }
    }
}

TEST_CASE("two-port column order is S11 S21 S12 S22")
{
    const auto d = parse("# GHz S RI R 50\n1.0 0.1 0 0.2 0 0.3 0 0.4 0\n");
    REQUIRE(d.n_ports == 2);
    const auto& s = d.sweep.at(0).s;
    CHECK(s.s(1, 1).real() == 0.1);
    CHECK(s.s(2, 1).real() == 0.2);
    CHECK(s.s(1, 2).real() == 0.3);
    CHECK(s.s(2, 2).real() == 0.4);
    CHECK(d.sweep.at(0).frequency == 1e9);
}

TEST_CASE("three-port rows are row-major, one row per line")
{
    const auto d = parse("! hand written\n"
                         "# MHz S MA R 75\n"
                         "100 0.11 0 0.12 90 0.13 180\n"
                         "    0.21 0 0.22 0 0.23 0\n"
                         "    0.31 0 0.32 0 0.33 -90 ! trailing comment\n",
                         3);
    const auto& s = d.sweep.at(0).s;
    CHECK(d.z_ref == 75.0);
    CHECK(s.z_ref() == 75.0);
    CHECK(std::abs(s.s(1, 2) - Complex(0.0, 0.12)) < 1e-15);
    CHECK(std::abs(s.s(1, 3) - Complex(-0.13, 0.0)) < 1e-15);
    CHECK(std::abs(s.s(3, 1) - Complex(0.31, 0.0)) < 1e-15);
    CHECK(std::abs(s.s(3, 3) - Complex(0.0, -0.33)) < 1e-15);
}

TEST_CASE("defaults without an option line and DB values")
{
    // Touchstone defaults: GHz, S, MA, 50 ohm.
    const auto d = parse("2.0 0.5 45\n");
    CHECK(d.unit == FrequencyUnit::GHz);
    CHECK(d.format == Format::MA);
    CHECK(d.n_ports == 1);
    CHECK(std::abs(d.sweep[0].s.s(1, 1) - std::polar(0.5, 3.14159265358979323846 / 4)) < 1e-15);

    const auto db = parse("# hz s db r 50\n1 -6.02059991327962 0\n");
    CHECK(std::abs(db.sweep[0].s.s(1, 1)) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("writer header and determinism")
{
    const auto sweep = random_sweep(2, 3, 7);
    std::ostringstream a, b;
    write(a, sweep, 2, {Format::MA, FrequencyUnit::MHz, {"unit test"}});
    write(b, sweep, 2, {Format::MA, FrequencyUnit::MHz, {"unit test"}});
    CHECK(a.str() == b.str());
    const std::string text = a.str();
    CHECK(text.rfind("! butler toolkit Touchstone v1 writer\n", 0) == 0);
    CHECK(text.find("! input-hash: fnv1a64:") != std::string::npos);
    CHECK(text.find("! unit test\n") != std::string::npos);
    CHECK(text.find("# MHz S MA R 50\n") != std::string::npos);

    std::ostringstream c;
    auto other = sweep;
    other[1].s(0, 1) += 1e-6;
    write(c, other, 2, {Format::MA, FrequencyUnit::MHz, {"unit test"}});
    CHECK(c.str().substr(0, 120) != text.substr(0, 120));
}

TEST_CASE("eight-port lines hold at most four pairs")
{
    const auto sweep = random_sweep(8, 1, 3);
    std::ostringstream out;
    write(out, sweep, 8);
    std::istringstream in(out.str());
    std::string line;
    int data_lines = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '!' || line[0] == '#')
            continue;
        std::istringstream ls(line);
        int tokens = 0;
        std::string t;
        while (ls >> t)
            ++tokens;
        CHECK(tokens <= 9);
        ++data_lines;
    }
    CHECK(data_lines == 16);
}

TEST_CASE("writer rejects inconsistent sweeps")
{
    std::ostringstream out;
    CHECK_THROWS_AS(write(out, {}, 2), ConsistencyError);
    auto s = random_sweep(2, 3, 1);
    std::swap(s[0], s[2]);
    CHECK_THROWS_AS(write(out, s, 2), OrderingError);
    auto mixed = random_sweep(2, 2, 1);
    mixed[1].s = ScatteringMatrix(3);
    CHECK_THROWS_AS(write(out, mixed, 2), ConsistencyError);
    auto z = random_sweep(2, 2, 1);
    z[1].s = ScatteringMatrix(z[1].s.matrix(), 75.0);
    CHECK_THROWS_AS(write(out, z, 2), ConsistencyError);
}

TEST_CASE("reader errors carry line numbers")
{
    CHECK(parse_error_line("# GHz S RI R 50\n1.0 0.1 0 0.2 0 0.3 0 0.4 0\n2.0 0.1 zero 0.2 0 0.3 0 0.4 0\n") == 3);
    CHECK(parse_error_line("# GHz S RI R 50\n1.0 0.1 0 0.2 0 0.3 0 0.4 0\n2.0 0.1 0 0.2\n") == 3);
    CHECK(parse_error_line("# GHz S RI R 50\n2.0 0.1 0\n1.0 0.1 0\n") == 3);
    CHECK(parse_error_line("# GHz Y RI R 50\n1.0 0.1 0\n") == 1);
    CHECK(parse_error_line("! c\n1.0 0.1 0\n# GHz S RI R 50\n") == 3);
    CHECK(parse_error_line("# GHz S XY R 50\n") == 1);
    CHECK(parse_error_line("# GHz S RI R 50\n1 0 0 0 0 0 0 0 0 0 0\n", 3) == 2);
    CHECK(parse_error_line("# GHz S RI R 50\n1 0.1 0\n", 2) == 2);
    CHECK(parse_error_line("# GHz S RI R 50\n1.0 0.1 0 0.2 0 0.3 0\n", 2) == 2);
    CHECK(parse_error_line("# GHz S RI R 50\n1 0 0 0 0 0 0\n0 0 0 0 0 0\n0 0 0 0\n", 3) == 2);
    CHECK_THROWS_AS(parse("! nothing here\n"), ParseError);
}

TEST_CASE("file helpers")
{
    CHECK(ports_from_extension("a/b/net.s8p") == 8);
    CHECK(ports_from_extension("X.S2P") == 2);
    CHECK(ports_from_extension("x.s12p") == 12);
    CHECK_FALSE(ports_from_extension("x.txt").has_value());
    CHECK_FALSE(ports_from_extension("x.sp").has_value());

    const auto path = std::filesystem::temp_directory_path() / "butler_touchstone_test.s3p";
    const auto sweep = random_sweep(3, 4, 11);
    write_file(path, sweep, 3, {Format::DB, FrequencyUnit::kHz, {}});
    const auto d = read_file(path);
    CHECK(d.n_ports == 3);
    CHECK(max_rel_diff(sweep, d.sweep) < 1e-9);
    std::filesystem::remove(path);

    try {
        read_file("/nonexistent/dir/x.s2p");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("x.s2p") != std::string::npos);
    }
}

}
