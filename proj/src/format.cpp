#include "butler/format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace butler {

std::string format_sig(double value, int digits)
{
    if (value == 0.0)
        value = 0.0; // folds -0 into 0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return buf;
}

double round_sig(double value, int digits)
{
    return std::strtod(format_sig(value, digits).c_str(), nullptr);
}

double to_db20(double magnitude)
{
    return 20.0 * std::log10(std::max(magnitude, 1e-30));
}

std::uint64_t fnv1a64(std::string_view data)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

} // namespace butler
