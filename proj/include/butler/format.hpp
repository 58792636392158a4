#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace butler {

// Shortest "%.<digits>g" rendering: lowercase exponent, no trailing noise.
std::string format_sig(double value, int digits = 9);

// Rounds to `digits` significant digits (the value format_sig would print).
double round_sig(double value, int digits = 9);

// 20 log10(x), with magnitudes below 1e-30 reported as -600 dB.
double to_db20(double magnitude);

// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t value);

} // namespace butler
