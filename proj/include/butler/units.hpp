#pragma once

#include <string>
#include <vector>

namespace butler {

enum class FrequencyUnit { Hz, kHz, MHz, GHz };

double unit_scale(FrequencyUnit unit);
std::string to_string(FrequencyUnit unit);
// Case-insensitive ("GHZ", "GHz", "ghz" ...).
FrequencyUnit frequency_unit_from_string(const std::string& text);

/// "5.2GHz", "5.2 GHz", "5200MHz", "5.2e9" -> Hz. Bare numbers are Hz.
double parse_frequency(const std::string& text);

/// "1.6mm", "0.0016", "1.6 mm", "16mil" -> meters. Bare numbers are meters.
double parse_length(const std::string& text);

// Linearly spaced frequency sweep.
struct SweepSpec {
    double f_start = 0.0;
    double f_stop = 0.0;
    int n_points = 2;
    FrequencyUnit scale_unit = FrequencyUnit::GHz;

    // Throws std::invalid_argument unless 0 < f_start < f_stop and n_points >= 2.
    void validate() const;
    std::vector<double> frequencies() const;
};

} // namespace butler
