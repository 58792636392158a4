#pragma once

#include "butler/antenna.hpp"
#include "butler/scattering.hpp"

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace butler::array {

// Uniform line array.
struct ArrayGeometry {
    int n_elements = 4;
    double spacing_d = 0.0; // meters
    double frequency = 0.0; // Hz

    void validate() const;
    double wavenumber() const; // 2 pi f / c

    // d = lambda0 / 2 at `frequency`.
    static ArrayGeometry half_wave(int n_elements, double frequency);
};

// Far-field magnitude against angle for one excitation.
struct PatternCut {
    std::vector<double> angles;    // radians, strictly increasing, within [-pi/2, pi/2]
    std::vector<double> magnitude; // linear field amplitude
    std::string input_port_label;

    void validate() const;
};

/// i * pi / n, the progressive phase of beam i of an n-element Butler array.
double inter_element_phase(int i, int n);

/// arcsin(alpha / (beta d)). Throws BeamInvisibleError when |alpha| > beta d.
double beam_angle(double alpha, const ArrayGeometry& geometry);

/// Beam direction of an excitation whose phase advances by `progression` from one
/// element to the next. A negative progression steers toward positive theta, so
/// this is beam_angle(-progression).
double steering_angle(double progression, const ArrayGeometry& geometry);

/// Angles from -90 to +90 deg inclusive in steps of `step_deg`, as radians.
std::vector<double> angle_grid(double step_deg = 0.05);

/// element(theta) * | sum_k a_k exp(j k beta d sin theta) |, k = 0..n-1.
/// With `normalize` the peak of the cut is scaled to 1.
PatternCut array_factor(std::span<const Complex> excitations, const ArrayGeometry& geometry,
                        std::span<const double> angles, antenna::ElementModel element,
                        bool normalize = true, std::string label = {});

struct PatternMetrics {
    double peak_angle = 0.0;      // radians, parabolic refinement of the largest sample
    double peak_magnitude = 0.0;
    double hpbw = 0.0;            // radians between the -3 dB points
    double hpbw_left = 0.0;
    double hpbw_right = 0.0;
    std::optional<double> sidelobe_db; // highest lobe outside the main lobe, dB below peak (negative)
};

/// Throws DegeneratePatternError if the cut has no distinct main lobe.
PatternMetrics pattern_metrics(const PatternCut& cut);

/// Level (dB relative to the weaker beam's peak) at which two beams intersect
/// between their peaks. Both cuts must share the same angle grid.
double beam_crossover_level_db(const PatternCut& a, const PatternCut& b);

/// Incoherent (power-sum) overlay of several cuts on a shared grid. The result is
/// labelled as such; it is not the field of a simultaneous coherent feed.
PatternCut incoherent_overlay(std::span<const PatternCut> cuts, bool normalize = true);

/// CSV with header `angle_deg,magnitude_linear,magnitude_db`, LF line endings.
void write_pattern_csv(std::ostream& out, const PatternCut& cut);

} // namespace butler::array
