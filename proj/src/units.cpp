#include "butler/units.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace butler {

namespace {

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Splits "5.2 GHz" into 5.2 and "ghz".
std::pair<double, std::string> split_quantity(const std::string& text, const char* what)
{
    const char* begin = text.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || !std::isfinite(value))
        throw std::invalid_argument(std::string("cannot parse ") + what + " '" + text + "'");
    std::string suffix(end);
    suffix.erase(std::remove_if(suffix.begin(), suffix.end(),
                                [](unsigned char c) { return std::isspace(c); }),
                 suffix.end());
    return {value, lower(suffix)};
}

} // namespace

double unit_scale(FrequencyUnit unit)
{
    switch (unit) {
    case FrequencyUnit::Hz: return 1.0;
    case FrequencyUnit::kHz: return 1e3;
    case FrequencyUnit::MHz: return 1e6;
    case FrequencyUnit::GHz: return 1e9;
    }
    return 1.0;
}

std::string to_string(FrequencyUnit unit)
{
    switch (unit) {
    case FrequencyUnit::Hz: return "Hz";
    case FrequencyUnit::kHz: return "kHz";
    case FrequencyUnit::MHz: return "MHz";
    case FrequencyUnit::GHz: return "GHz";
    }
    return "Hz";
}

FrequencyUnit frequency_unit_from_string(const std::string& text)
{
    const std::string t = lower(text);
    if (t == "hz")
        return FrequencyUnit::Hz;
    if (t == "khz")
        return FrequencyUnit::kHz;
    if (t == "mhz")
        return FrequencyUnit::MHz;
    if (t == "ghz")
        return FrequencyUnit::GHz;
    throw std::invalid_argument("unknown frequency unit '" + text + "'");
}

double parse_frequency(const std::string& text)
{
    auto [value, suffix] = split_quantity(text, "frequency");
    if (!(value > 0.0))
        throw std::invalid_argument("frequency must be positive, got '" + text + "'");
    if (!suffix.empty())
        value *= unit_scale(frequency_unit_from_string(suffix));
    return value;
}

double parse_length(const std::string& text)
{
    auto [value, suffix] = split_quantity(text, "length");
    if (!(value > 0.0))
        throw std::invalid_argument("length must be positive, got '" + text + "'");
    if (suffix.empty() || suffix == "m")
        return value;
    if (suffix == "mm")
        return value * 1e-3;
    if (suffix == "um")
        return value * 1e-6;
    if (suffix == "cm")
        return value * 1e-2;
    if (suffix == "mil")
        return value * 25.4e-6;
    throw std::invalid_argument("unknown length unit in '" + text + "'");
}

void SweepSpec::validate() const
{
    if (!(f_start > 0.0) || !(f_stop > f_start))
        throw std::invalid_argument("sweep needs 0 < f_start < f_stop");
    if (n_points < 2)
        throw std::invalid_argument("sweep needs at least two points");
}

std::vector<double> SweepSpec::frequencies() const
{
    validate();
    std::vector<double> f(static_cast<std::size_t>(n_points));
    const double step = (f_stop - f_start) / (n_points - 1);
    for (int i = 0; i < n_points; ++i)
        f[static_cast<std::size_t>(i)] = f_start + step * i;
    f.back() = f_stop;
    return f;
}

} // namespace butler
