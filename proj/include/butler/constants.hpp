#pragma once

#include <numbers>

namespace butler {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kDefaultZRef = 50.0;         // ohms

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

} // namespace butler
