#include "butler/format.hpp"
#include "butler/units.hpp"

#include "doctest.h"

#include <stdexcept>

using namespace butler;

TEST_SUITE("units_format") {

TEST_CASE("frequency strings")
{
    CHECK(parse_frequency("5.2GHz") == doctest::Approx(5.2e9).epsilon(1e-15));
    CHECK(parse_frequency("5.2 GHz") == doctest::Approx(5.2e9).epsilon(1e-15));
    CHECK(parse_frequency("5200MHz") == doctest::Approx(5.2e9).epsilon(1e-15));
    CHECK(parse_frequency("5200000khz") == doctest::Approx(5.2e9).epsilon(1e-15));
    CHECK(parse_frequency("5.2e9") == doctest::Approx(5.2e9).epsilon(1e-15));
    CHECK(parse_frequency("7 hz") == 7.0);
    CHECK_THROWS_AS(parse_frequency(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_frequency("fast"), std::invalid_argument);
    CHECK_THROWS_AS(parse_frequency("5.2 THz"), std::invalid_argument);
    CHECK_THROWS_AS(parse_frequency("-1GHz"), std::invalid_argument);
}

TEST_CASE("length strings")
{
    CHECK(parse_length("1.6mm") == doctest::Approx(1.6e-3).epsilon(1e-15));
    CHECK(parse_length("0.0016") == doctest::Approx(1.6e-3).epsilon(1e-15));
    CHECK(parse_length("0.16 cm") == doctest::Approx(1.6e-3).epsilon(1e-15));
    CHECK(parse_length("1600um") == doctest::Approx(1.6e-3).epsilon(1e-15));
    CHECK(parse_length("63mil") == doctest::Approx(63 * 25.4e-6).epsilon(1e-15));
    CHECK_THROWS_AS(parse_length("1.6 furlong"), std::invalid_argument);
    CHECK_THROWS_AS(parse_length("0mm"), std::invalid_argument);
}

TEST_CASE("unit names")
{
    CHECK(frequency_unit_from_string("ghz") == FrequencyUnit::GHz);
    CHECK(frequency_unit_from_string("KHZ") == FrequencyUnit::kHz);
    CHECK(to_string(FrequencyUnit::MHz) == "MHz");
    CHECK(unit_scale(FrequencyUnit::kHz) == 1e3);
    CHECK_THROWS_AS(frequency_unit_from_string("THz"), std::invalid_argument);
}

TEST_CASE("sweep spec")
{
    const SweepSpec s{4.8e9, 5.6e9, 81, FrequencyUnit::GHz};
    const auto f = s.frequencies();
    REQUIRE(f.size() == 81);
    CHECK(f.front() == 4.8e9);
    CHECK(f.back() == 5.6e9);
    CHECK(f[40] == doctest::Approx(5.2e9).epsilon(1e-15));
    for (std::size_t i = 1; i < f.size(); ++i)
        CHECK(f[i] > f[i - 1]);
    CHECK_THROWS_AS((SweepSpec{5e9, 4e9, 10, FrequencyUnit::GHz}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SweepSpec{4e9, 5e9, 1, FrequencyUnit::GHz}.validate()), std::invalid_argument);
}

TEST_CASE("number formatting")
{
    CHECK(format_sig(0.1) == "0.1");
    CHECK(format_sig(-0.0) == "0");
    CHECK(format_sig(5.2e9) == "5.2e+09");
    CHECK(format_sig(1.0 / 3.0) == "0.333333333");
    CHECK(format_sig(1.0 / 3.0, 4) == "0.3333");
    CHECK(round_sig(1.23456789012, 4) == 1.235);
    CHECK(to_db20(0.5) == doctest::Approx(-6.020599913279624).epsilon(1e-14));
    CHECK(to_db20(0.0) == -600.0);
}

TEST_CASE("fnv1a64 reference vectors")
{
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
    CHECK(hex64(0xabcULL) == "0000000000000abc");
}

}
