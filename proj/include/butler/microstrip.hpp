#pragma once

// Closed-form quasi-static microstrip synthesis and analysis.
//
// All lengths are in meters, frequencies in Hz, impedances in ohms.
//
// Width synthesis uses the two classic Wheeler/Hammerstad-style expressions:
//
//   wide strip  (W/h > 2):  B   = 60 pi^2 / (Z0 sqrt(er))
//                           W/h = 2/pi { B - 1 - ln(2B - 1)
//                                 + (er - 1)/(2 er) [ ln(B - 1) + 0.39 - 0.61/er ] }
//   narrow strip (W/h < 2): A   = (Z0/60) sqrt((er + 1)/2)
//                                 + (er - 1)/(er + 1) (0.23 + 0.11/er)
//                           W/h = 8 e^A / (e^{2A} - 2)
//
// Note the /60 in A. Some printed versions omit it, which yields meaningless
// widths. The branch is chosen by self-consistency of the returned W/h against
// 2, not by an impedance threshold.

#include "butler/errors.hpp"

namespace butler::microstrip {

struct Substrate {
    double epsilon_r = 1.0;
    double height_h = 0.0; // meters

    // Throws std::invalid_argument unless epsilon_r >= 1 and height_h > 0.
    void validate() const;
};

struct MicrostripLineSpec {
    Substrate substrate;
    double z0 = 0.0;
    double width_w = 0.0;
    double length_l = 0.0;
    double eps_reff = 1.0;
    double electrical_length = 0.0; // radians at the design frequency
};

// Which closed-form expression produced a synthesized width.
enum class WidthBranch { wide, narrow };

struct WidthSynthesis {
    double width_w;
    double w_over_h;
    WidthBranch branch;
};

/// Conductor width for characteristic impedance `z0` on `substrate`.
/// Throws SynthesisRangeError when neither formula gives a finite positive W/h.
double synthesize_width(double z0, const Substrate& substrate);

/// Same as synthesize_width but also reports W/h and the formula branch used.
WidthSynthesis synthesize_width_detail(double z0, const Substrate& substrate);

/// Characteristic impedance of a strip of width `width_w` (Hammerstad closed form,
/// with the effective permittivity of effective_permittivity()).
double analyze_impedance(double width_w, const Substrate& substrate);

/// (er + 1)/2 + (er - 1)/2 * (1 + 12 h / W)^-1/2
double effective_permittivity(double width_w, const Substrate& substrate);

/// Wavelength inside the line, lambda0 / sqrt(eps_reff).
double guided_wavelength(double frequency, double eps_reff);

/// c / (4 f sqrt(eps_reff)), i.e. guided_wavelength / 4.
double quarter_wave_length(double frequency, double eps_reff);

/// Physical length giving a transmission phase of `phi` radians: phi * lambda_g / (2 pi).
double phase_shift_length(double phi, double frequency, double eps_reff);

/// Synthesizes a complete line: width for z0, eps_reff of that width, and the
/// length for `electrical_length` radians at `frequency`.
MicrostripLineSpec design_line(double z0, double electrical_length, double frequency,
                               const Substrate& substrate);

} // namespace butler::microstrip
