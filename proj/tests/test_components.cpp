#include "butler/components.hpp"
#include "butler/constants.hpp"
#include "butler/errors.hpp"
#include "butler/microstrip.hpp"

#include "doctest.h"

#include <cmath>

using namespace butler;
using namespace butler::components;

namespace {

const microstrip::Substrate kFr4{4.9, 1.6e-3};
constexpr double kF0 = 5.2e9;
const Complex j{0.0, 1.0};

ScatteringMatrix hybrid_reference()
{
    const double r = 1.0 / std::sqrt(2.0);
    ScatteringMatrix s(4);
    s(0, 1) = s(1, 0) = j * r;
    s(0, 2) = s(2, 0) = r;
    s(1, 3) = s(3, 1) = r;
    s(2, 3) = s(3, 2) = j * r;
    return s;
}

// Lossless line of normalized impedance z and electrical length t between
// matched z_ref ports, from the textbook closed form.
Complex line_s11(double z, double t)
{
    return j * (z * z - 1.0) * std::sin(t) / (2.0 * z * std::cos(t) + j * (z * z + 1.0) * std::sin(t));
}
Complex line_s21(double z, double t)
{
    return 2.0 * z / (2.0 * z * std::cos(t) + j * (z * z + 1.0) * std::sin(t));
}

} // namespace

TEST_SUITE("components") {

TEST_CASE("ideal hybrid")
{
    const auto s = ideal_hybrid()->evaluate(kF0);
    CHECK(s.max_abs_difference(hybrid_reference()) < 1e-15);
    CHECK(s.unitarity_error() < 1e-15);
    CHECK(s.reciprocity_error() == 0.0);
    CHECK(std::arg(s.s(2, 1)) - std::arg(s.s(3, 1)) == doctest::Approx(kPi / 2));
    CHECK(ideal_hybrid()->evaluate(1e6).max_abs_difference(s) == 0.0);
    CHECK(ideal_hybrid()->kind() == "ideal_hybrid");
    CHECK(ideal_hybrid()->fidelity() == Fidelity::ideal);
}

TEST_CASE("ideal crossover")
{
    const auto s = ideal_crossover()->evaluate(kF0);
    CHECK(s.s(3, 1) == j);
    CHECK(s.s(4, 2) == j);
    CHECK(s.s(1, 3) == j);
    CHECK(std::abs(s.s(2, 1)) == 0.0);
    CHECK(std::abs(s.s(4, 1)) == 0.0);
    CHECK(s.unitarity_error() < 1e-15);
}

TEST_CASE("phase shifter scales with frequency")
{
    const auto ps = phase_shifter(deg2rad(45.0), kF0);
    CHECK(rad2deg(std::arg(ps->evaluate(kF0).s(2, 1))) == doctest::Approx(-45.0).epsilon(1e-14));
    CHECK(rad2deg(std::arg(ps->evaluate(2 * kF0).s(2, 1))) == doctest::Approx(-90.0).epsilon(1e-14));
    CHECK(std::abs(ps->evaluate(3.3e9).s(2, 1)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(ps->evaluate(3.3e9).s(1, 1)) == 0.0);
}

TEST_CASE("transmission line against the closed form")
{
    const double eeff = 3.0;
    const double length = 0.01;
    for (const double z0 : {25.0, 50.0, 70.0, 120.0}) {
        const auto line = tline(z0, length, eeff);
        for (const double f : {1e9, 3.7e9, 5.2e9, 9e9}) {
            const double t = 2.0 * kPi * f * std::sqrt(eeff) / kSpeedOfLight * length;
            const auto s = line->evaluate(f);
            CAPTURE(z0);
            CAPTURE(f);
            CHECK(std::abs(s.s(1, 1) - line_s11(z0 / 50.0, t)) < 1e-12);
            CHECK(std::abs(s.s(2, 1) - line_s21(z0 / 50.0, t)) < 1e-12);
            CHECK(std::abs(s.s(2, 2) - s.s(1, 1)) < 1e-14);
            CHECK(s.unitarity_error() < 1e-12);
            CHECK(s.reciprocity_error() < 1e-15);
        }
    }
}

TEST_CASE("quarter-wave transformer reflection")
{
    // 70.71 ohm quarter wave between 50 ohm ports: Zin = 100 ohm, |G| = 1/3.
    const double eeff = 3.5;
    const double len = microstrip::quarter_wave_length(kF0, eeff);
    const auto s = tline(50.0 * std::sqrt(2.0), len, eeff)->evaluate(kF0);
    CHECK(std::abs(s.s(1, 1)) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("abcd conversion")
{
    const auto thru = abcd_to_s(Eigen::Matrix2cd::Identity());
    CHECK(std::abs(thru.s(2, 1) - 1.0) < 1e-15);
    CHECK(std::abs(thru.s(1, 1)) < 1e-15);

    // Series 50 ohm resistor: S11 = 1/3, S21 = 2/3.
    Eigen::Matrix2cd series;
    series << 1.0, 50.0, 0.0, 1.0;
    const auto s = abcd_to_s(series);
    CHECK(std::abs(s.s(1, 1) - 1.0 / 3.0) < 1e-15);
    CHECK(std::abs(s.s(2, 1) - 2.0 / 3.0) < 1e-15);

    const auto m = tline_abcd(50.0, kPi / 2);
    CHECK(std::abs(m(0, 0)) < 1e-15);
    CHECK(std::abs(m(0, 1) - j * 50.0) < 1e-13);
}

TEST_CASE("junction and load")
{
    for (int n = 2; n <= 5; ++n) {
        const auto s = junction(n)->evaluate(kF0);
        CHECK(s.n_ports() == n);
        CHECK(s.unitarity_error() < 1e-15);
        CHECK(s.s(1, 1).real() == doctest::Approx(2.0 / n - 1.0));
        CHECK(s.s(2, 1).real() == doctest::Approx(2.0 / n));
    }
    const auto load = matched_load()->evaluate(kF0);
    CHECK(load.n_ports() == 1);
    CHECK(std::abs(load.s(1, 1)) == 0.0);
    CHECK_THROWS(junction(1));
}

TEST_CASE("branchline hybrid equals the ideal hybrid at f0")
{
    const auto dev = branchline_hybrid_circuit(kF0, kFr4);
    CHECK(dev->fidelity() == Fidelity::circuit);
    const auto s = dev->evaluate(kF0);
    CHECK(s.max_abs_difference(ideal_hybrid()->evaluate(kF0)) < 1e-12);
}

TEST_CASE("branchline hybrid off centre matches nodal analysis")
{
    // Reference values from a node-admittance solution of the same four arms and
    // access lines.
    struct Row {
        double ratio, s11, s21, s31, s41;
        Complex s21c, s31c;
    };
    const Row rows[] = {
        {0.8, 0.3747363077653614, 0.549762976178672, 0.6790579676861227, 0.31018324614257636,
         {-0.5239115231416306, 0.16660145826566983}, {0.1095057505567275, 0.6701702873695722}},
        {0.9, 0.19190895694099033, 0.6591637531866135, 0.7044493996584552, 0.1800698254888941,
         {-0.4134330413190829, 0.5133906639789199}, {0.5391142527841851, 0.4534366318727543}},
        {1.1, 0.1919089569409901, 0.6591637531866135, 0.7044493996584552, 0.18006982548889391,
         {0.41343304131908254, 0.5133906639789201}, {0.5391142527841855, -0.45343663187275385}},
    };
    const auto dev = branchline_hybrid_circuit(kF0, kFr4);
    for (const auto& r : rows) {
        const auto s = dev->evaluate(r.ratio * kF0);
        CAPTURE(r.ratio);
        CHECK(std::abs(s.s(1, 1)) == doctest::Approx(r.s11).epsilon(1e-10));
        CHECK(std::abs(s.s(2, 1)) == doctest::Approx(r.s21).epsilon(1e-10));
        CHECK(std::abs(s.s(3, 1)) == doctest::Approx(r.s31).epsilon(1e-10));
        CHECK(std::abs(s.s(4, 1)) == doctest::Approx(r.s41).epsilon(1e-10));
        CHECK(std::abs(s.s(2, 1) - r.s21c) < 1e-10);
        CHECK(std::abs(s.s(3, 1) - r.s31c) < 1e-10);
        CHECK(s.unitarity_error() < 1e-12);
        CHECK(s.reciprocity_error() < 1e-12);
    }
}

TEST_CASE("circuit crossover at f0")
{
    const auto s = crossover_circuit(kF0, kFr4)->evaluate(kF0);
    CHECK(s.max_abs_difference(ideal_crossover()->evaluate(kF0)) < 1e-12);
    const auto off = crossover_circuit(kF0, kFr4)->evaluate(0.9 * kF0);
    CHECK(off.unitarity_error() < 1e-12);
    CHECK(std::abs(off.s(3, 1)) < 1.0);
}

TEST_CASE("microstrip phase shifter")
{
    const auto dev = microstrip_phase_shifter(deg2rad(45.0), kF0, kFr4);
    const auto s = dev->evaluate(kF0);
    CHECK(rad2deg(std::arg(s.s(2, 1))) == doctest::Approx(-45.0).epsilon(1e-9));
    CHECK(std::abs(s.s(1, 1)) < 1e-12);
    CHECK(rad2deg(std::arg(dev->evaluate(2 * kF0).s(2, 1))) == doctest::Approx(-90.0).epsilon(1e-9));
}

TEST_CASE("devices rebuild from kind and parameters")
{
    const DevicePtr devices[] = {
        ideal_hybrid(),
        ideal_crossover(),
        phase_shifter(deg2rad(30.0), kF0),
        tline(35.0, 0.012, 3.2),
        matched_load(),
        junction(3),
        branchline_hybrid_circuit(kF0, kFr4),
        crossover_circuit(kF0, kFr4),
        microstrip_phase_shifter(deg2rad(45.0), kF0, kFr4),
    };
    for (const auto& d : devices) {
        CAPTURE(d->kind());
        const auto copy = make_device(d->kind(), d->params());
        CHECK(copy->kind() == d->kind());
        CHECK(copy->n_ports() == d->n_ports());
        for (const double f : {4.7e9, 5.2e9, 6.1e9})
            CHECK(copy->evaluate(f).max_abs_difference(d->evaluate(f)) < 1e-15);
    }
    CHECK_THROWS_AS(make_device("flux_capacitor", {}), NetlistError);
    CHECK_THROWS_AS(make_device("tline", {{"z0_ohm", 50.0}}), NetlistError);
    CHECK_THROWS_AS(make_device("junction", {{"n_ports", 2.5}}), NetlistError);
}

TEST_CASE("evaluation rejects non-positive frequency")
{
    CHECK_THROWS_AS(ideal_hybrid()->evaluate(0.0), std::invalid_argument);
    CHECK_THROWS_AS(tline(50, 0.01, 3)->evaluate(-1.0), std::invalid_argument);
}

}
