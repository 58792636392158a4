#include "butler/microstrip.hpp"

#include "butler/constants.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace butler::microstrip {

namespace {

void require_positive(double value, const char* what)
{
    if (!(value > 0.0) || !std::isfinite(value))
        throw std::invalid_argument(std::string(what) + " must be finite and positive");
}

std::optional<double> wide_strip_ratio(double z0, double er)
{
    const double b = 60.0 * kPi * kPi / (z0 * std::sqrt(er));
    if (b <= 1.0)
        return std::nullopt;
    const double u = 2.0 / kPi *
                     (b - 1.0 - std::log(2.0 * b - 1.0) +
                      (er - 1.0) / (2.0 * er) * (std::log(b - 1.0) + 0.39 - 0.61 / er));
    if (!std::isfinite(u) || u <= 0.0)
        return std::nullopt;
    return u;
}

std::optional<double> narrow_strip_ratio(double z0, double er)
{
    const double a = z0 / 60.0 * std::sqrt((er + 1.0) / 2.0) +
                     (er - 1.0) / (er + 1.0) * (0.23 + 0.11 / er);
    const double denom = std::exp(2.0 * a) - 2.0;
    const double u = 8.0 * std::exp(a) / denom;
    if (!std::isfinite(u) || u <= 0.0)
        return std::nullopt;
    return u;
}

double impedance_from_ratio(double u, const Substrate& s)
{
    const double e = effective_permittivity(u * s.height_h, s);
    if (u <= 1.0)
        return 60.0 / std::sqrt(e) * std::log(8.0 / u + u / 4.0);
    return 120.0 * kPi / (std::sqrt(e) * (u + 1.393 + 0.667 * std::log(u + 1.444)));
}

double round_trip_error(double u, double z0, const Substrate& s)
{
    return std::abs(impedance_from_ratio(u, s) - z0) / z0;
}

} // namespace

void Substrate::validate() const
{
    if (!(epsilon_r >= 1.0) || !std::isfinite(epsilon_r))
        throw std::invalid_argument("substrate epsilon_r must be >= 1");
    require_positive(height_h, "substrate height");
}

WidthSynthesis synthesize_width_detail(double z0, const Substrate& substrate)
{
    substrate.validate();
    if (!(z0 > 0.0) || !std::isfinite(z0)) {
        std::ostringstream os;
        os << "cannot synthesize a microstrip width for z0 = " << z0 << " ohm";
        throw SynthesisRangeError(os.str());
    }

    const double er = substrate.epsilon_r;
    const auto wide = wide_strip_ratio(z0, er);
    std::optional<double> narrow;
    if (!wide || *wide < 2.0)
        narrow = narrow_strip_ratio(z0, er);

    const bool wide_ok = wide && *wide > 2.0;
    const bool narrow_ok = narrow && *narrow < 2.0;

    std::optional<WidthBranch> pick;
    if (wide_ok && !narrow_ok)
        pick = WidthBranch::wide;
    else if (narrow_ok && !wide_ok)
        pick = WidthBranch::narrow;
    else if (wide && narrow)
        pick = round_trip_error(*wide, z0, substrate) <= round_trip_error(*narrow, z0, substrate)
                   ? WidthBranch::wide
                   : WidthBranch::narrow;
    else if (wide)
        pick = WidthBranch::wide;
    else if (narrow)
        pick = WidthBranch::narrow;

    if (!pick) {
        std::ostringstream os;
        os << "z0 = " << z0 << " ohm is outside the microstrip synthesis range for er = " << er;
        throw SynthesisRangeError(os.str());
    }
    const double u = *pick == WidthBranch::wide ? *wide : *narrow;
    return {u * substrate.height_h, u, *pick};
}

double synthesize_width(double z0, const Substrate& substrate)
{
    return synthesize_width_detail(z0, substrate).width_w;
}

double analyze_impedance(double width_w, const Substrate& substrate)
{
    substrate.validate();
    require_positive(width_w, "strip width");
    return impedance_from_ratio(width_w / substrate.height_h, substrate);
}

double effective_permittivity(double width_w, const Substrate& substrate)
{
    substrate.validate();
    require_positive(width_w, "strip width");
    const double er = substrate.epsilon_r;
    return (er + 1.0) / 2.0 +
           (er - 1.0) / 2.0 / std::sqrt(1.0 + 12.0 * substrate.height_h / width_w);
}

double guided_wavelength(double frequency, double eps_reff)
{
    require_positive(frequency, "frequency");
    if (!(eps_reff >= 1.0))
        throw std::invalid_argument("eps_reff must be >= 1");
    return kSpeedOfLight / frequency / std::sqrt(eps_reff);
}

double quarter_wave_length(double frequency, double eps_reff)
{
    return guided_wavelength(frequency, eps_reff) / 4.0;
}

double phase_shift_length(double phi, double frequency, double eps_reff)
{
    require_positive(phi, "phase");
    return phi * guided_wavelength(frequency, eps_reff) / (2.0 * kPi);
}

MicrostripLineSpec design_line(double z0, double electrical_length, double frequency,
                               const Substrate& substrate)
{
    MicrostripLineSpec line;
    line.substrate = substrate;
    line.z0 = z0;
    line.width_w = synthesize_width(z0, substrate);
    line.eps_reff = effective_permittivity(line.width_w, substrate);
    line.electrical_length = electrical_length;
    line.length_l = phase_shift_length(electrical_length, frequency, line.eps_reff);
    return line;
}

} // namespace butler::microstrip
