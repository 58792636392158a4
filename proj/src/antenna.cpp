#include "butler/antenna.hpp"

#include "butler/constants.hpp"
#include "butler/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace butler::antenna {

PatchDims design_patch(double fr, const microstrip::Substrate& substrate)
{
    if (!(fr > 0.0) || !std::isfinite(fr))
        throw std::invalid_argument("patch resonance frequency must be positive");
    substrate.validate();

    const double er = substrate.epsilon_r;
    const double h = substrate.height_h;

    PatchDims p;
    p.width_w = kSpeedOfLight / (2.0 * fr) * std::sqrt(2.0 / (er + 1.0));
    p.eps_reff = microstrip::effective_permittivity(p.width_w, substrate);

    const double u = p.width_w / h;
    p.delta_l = 0.412 * h * (p.eps_reff + 0.3) * (u + 0.264) / ((p.eps_reff - 0.258) * (u + 0.8));
    p.length_l = kSpeedOfLight / (2.0 * fr * std::sqrt(p.eps_reff)) - 2.0 * p.delta_l;

    if (!(p.length_l > 0.0) || !(p.delta_l > 0.0)) {
        std::ostringstream os;
        os << "patch design out of range: length " << p.length_l << " m at " << fr
           << " Hz on h = " << h << " m";
        throw DesignRangeError(os.str());
    }
    return p;
}

double inset_position(double r_edge, double r_target, double length_l)
{
    if (!(r_target > 0.0) || !(r_edge > 0.0) || !(length_l > 0.0))
        throw std::invalid_argument("inset_position needs positive resistances and length");
    if (r_target > r_edge) {
        std::ostringstream os;
        os << "no inset position: target " << r_target << " ohm exceeds edge resistance " << r_edge
           << " ohm";
        throw NoSolutionError(os.str());
    }
    return length_l / kPi * std::acos(std::sqrt(r_target / r_edge));
}

PatchDims design_inset_fed_patch(double fr, const microstrip::Substrate& substrate, double r_edge,
                                 double r_target)
{
    PatchDims p = design_patch(fr, substrate);
    p.inset_y0 = inset_position(r_edge, r_target, p.length_l);
    p.feed_line_width = microstrip::synthesize_width(r_target, substrate);
    return p;
}

double element_pattern(double theta, ElementModel model)
{
    if (model == ElementModel::isotropic)
        return 1.0;
    if (std::abs(theta) >= kPi / 2.0)
        return 0.0;
    return std::cos(theta);
}

} // namespace butler::antenna
