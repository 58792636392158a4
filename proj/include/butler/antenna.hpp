#pragma once

#include "butler/microstrip.hpp"

namespace butler::antenna {

// Rectangular patch dimensions, meters.
struct PatchDims {
    double width_w = 0.0;
    double length_l = 0.0;
    double delta_l = 0.0;   // fringing extension of each radiating edge
    double eps_reff = 1.0;
    double inset_y0 = 0.0;  // inset depth of the feed notch
    double feed_line_width = 0.0;
};

// Edge input resistance of the 5.2 GHz FR4 reference patch. It is not derived
// here: it is the value for which a 4.7 mm inset on a 12.7 mm patch lands at
// 50 ohm, i.e. it was back-solved from the built design.
inline constexpr double kReferenceEdgeResistance = 317.0;

/// Patch for resonance `fr` on `substrate`:
///   W    = c/(2 fr) sqrt(2/(er+1))
///   eeff = (er+1)/2 + (er-1)/2 (1 + 12 h/W)^-1/2
///   dL   = 0.412 h (eeff+0.3)(W/h+0.264) / ((eeff-0.258)(W/h+0.8))
///   L    = c/(2 fr sqrt(eeff)) - 2 dL
/// The inset fields are left at zero. Throws DesignRangeError if L <= 0.
PatchDims design_patch(double fr, const microstrip::Substrate& substrate);

/// Inset depth at which Rin = r_edge cos^2(pi y0 / L) equals r_target.
/// Throws NoSolutionError if r_target > r_edge.
double inset_position(double r_edge, double r_target, double length_l);

/// design_patch() plus the inset for r_target and the width of the r_target feed line.
PatchDims design_inset_fed_patch(double fr, const microstrip::Substrate& substrate,
                                 double r_edge = kReferenceEdgeResistance,
                                 double r_target = 50.0);

enum class ElementModel { cosine, isotropic };

/// Element amplitude at theta (radians from broadside). The cosine model is a
/// modelling choice, clamped to 0 past +-90 deg.
double element_pattern(double theta, ElementModel model = ElementModel::cosine);

} // namespace butler::antenna
