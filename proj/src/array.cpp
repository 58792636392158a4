#include "butler/array.hpp"

#include "butler/errors.hpp"
#include "butler/format.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace butler::array {

void ArrayGeometry::validate() const
{
    if (n_elements < 2)
        throw std::invalid_argument("array needs at least two elements");
    if (!(spacing_d > 0.0))
        throw std::invalid_argument("element spacing must be positive");
    if (!(frequency > 0.0))
        throw std::invalid_argument("array frequency must be positive");
}

double ArrayGeometry::wavenumber() const
{
    return 2.0 * kPi * frequency / kSpeedOfLight;
}

ArrayGeometry ArrayGeometry::half_wave(int n_elements, double frequency)
{
    return {n_elements, kSpeedOfLight / frequency / 2.0, frequency};
}

void PatternCut::validate() const
{
    if (angles.size() != magnitude.size())
        throw std::invalid_argument("pattern cut angle and magnitude lists differ in length");
    for (std::size_t i = 0; i < angles.size(); ++i) {
        if (angles[i] < -kPi / 2.0 - 1e-12 || angles[i] > kPi / 2.0 + 1e-12)
            throw std::invalid_argument("pattern cut angle outside [-90, 90] deg");
        if (i > 0 && !(angles[i] > angles[i - 1]))
            throw std::invalid_argument("pattern cut angles must be strictly increasing");
    }
}

double inter_element_phase(int i, int n)
{
    if (n < 2 || i < 1 || i > n - 1)
        throw std::out_of_range("beam index " + std::to_string(i) + " outside 1.." +
                                std::to_string(n - 1));
    return i * kPi / n;
}

double beam_angle(double alpha, const ArrayGeometry& geometry)
{
    geometry.validate();
    const double bd = geometry.wavenumber() * geometry.spacing_d;
    if (std::abs(alpha) > bd) {
        std::ostringstream os;
        os << "progressive phase " << rad2deg(alpha) << " deg exceeds beta*d = " << rad2deg(bd)
           << " deg; the beam is not in visible space";
        throw BeamInvisibleError(os.str());
    }
    return std::asin(alpha / bd);
}

double steering_angle(double progression, const ArrayGeometry& geometry)
{
    return beam_angle(-progression, geometry);
}

std::vector<double> angle_grid(double step_deg)
{
    if (!(step_deg > 0.0) || step_deg > 180.0)
        throw std::invalid_argument("angle grid step must be in (0, 180] deg");
    const auto n = static_cast<long>(std::floor(180.0 / step_deg + 1e-9));
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(n + 2));
    for (long i = 0; i <= n; ++i)
        grid.push_back(deg2rad(-90.0 + static_cast<double>(i) * step_deg));
    if (rad2deg(grid.back()) < 90.0 - 1e-9)
        grid.push_back(deg2rad(90.0));
    return grid;
}

PatternCut array_factor(std::span<const Complex> excitations, const ArrayGeometry& geometry,
                        std::span<const double> angles, antenna::ElementModel element,
                        bool normalize, std::string label)
{
    geometry.validate();
    if (static_cast<int>(excitations.size()) != geometry.n_elements)
        throw std::invalid_argument("excitation count does not match the number of elements");

    PatternCut cut;
    cut.input_port_label = std::move(label);
    cut.angles.assign(angles.begin(), angles.end());
    cut.magnitude.reserve(angles.size());

    const double bd = geometry.wavenumber() * geometry.spacing_d;
    for (double theta : angles) {
        const double psi = bd * std::sin(theta);
        Complex sum{0.0, 0.0};
        for (std::size_t k = 0; k < excitations.size(); ++k)
            sum += excitations[k] * std::polar(1.0, static_cast<double>(k) * psi);
        cut.magnitude.push_back(antenna::element_pattern(theta, element) * std::abs(sum));
    }
    cut.validate();

    if (normalize && !cut.magnitude.empty()) {
        const double peak = *std::max_element(cut.magnitude.begin(), cut.magnitude.end());
        if (peak > 0.0)
            for (double& m : cut.magnitude)
                m /= peak;
    }
    return cut;
}

namespace {

// Angle at which the magnitude falls through `level` between samples i and i+1.
double crossing(const PatternCut& c, std::size_t i, double level)
{
    const double m0 = c.magnitude[i], m1 = c.magnitude[i + 1];
    const double t = (m0 == m1) ? 0.5 : (level - m0) / (m1 - m0);
    return c.angles[i] + t * (c.angles[i + 1] - c.angles[i]);
}

} // namespace

PatternMetrics pattern_metrics(const PatternCut& cut)
{
    cut.validate();
    const auto& m = cut.magnitude;
    const std::size_t n = m.size();
    if (n < 3)
        throw DegeneratePatternError("pattern cut needs at least three samples");

    const auto [lo, hi] = std::minmax_element(m.begin(), m.end());
    if (*hi <= 0.0 || *hi - *lo <= 1e-12 * *hi)
        throw DegeneratePatternError("pattern '" + cut.input_port_label + "' has no distinct main lobe");

    const std::size_t ip = static_cast<std::size_t>(hi - m.begin());
    PatternMetrics r;
    r.peak_angle = cut.angles[ip];
    r.peak_magnitude = m[ip];
    if (ip > 0 && ip + 1 < n) {
        // vertex of the parabola through the three samples around the maximum
        const double y0 = m[ip - 1], y1 = m[ip], y2 = m[ip + 1];
        const double denom = y0 - 2.0 * y1 + y2;
        if (denom < 0.0) {
            const double delta = 0.5 * (y0 - y2) / denom;
            const double step = 0.5 * (cut.angles[ip + 1] - cut.angles[ip - 1]);
            r.peak_angle = cut.angles[ip] + delta * step;
            r.peak_magnitude = y1 - 0.25 * (y0 - y2) * delta;
        }
    }

    const double half = m[ip] / std::sqrt(2.0);
    std::size_t i = ip;
    while (i > 0 && m[i - 1] >= half)
        --i;
    r.hpbw_left = (i == 0) ? cut.angles.front() : crossing(cut, i - 1, half);
    i = ip;
    while (i + 1 < n && m[i + 1] >= half)
        ++i;
    r.hpbw_right = (i + 1 == n) ? cut.angles.back() : crossing(cut, i, half);
    r.hpbw = r.hpbw_right - r.hpbw_left;

    // main lobe: descend from the peak to the first local minimum on each side
    std::size_t left = ip;
    while (left > 0 && m[left - 1] <= m[left])
        --left;
    std::size_t right = ip;
    while (right + 1 < n && m[right + 1] <= m[right])
        ++right;

    double best = -1.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k >= left && k <= right)
            continue;
        const bool rising_left = (k == 0) || m[k] >= m[k - 1];
        const bool rising_right = (k + 1 == n) || m[k] >= m[k + 1];
        if (rising_left && rising_right)
            best = std::max(best, m[k]);
    }
    if (best > 0.0)
        r.sidelobe_db = 20.0 * std::log10(best / m[ip]);
    return r;
}

double beam_crossover_level_db(const PatternCut& a, const PatternCut& b)
{
    a.validate();
    b.validate();
    if (a.angles != b.angles)
        throw std::invalid_argument("beam crossover needs cuts on the same grid");
    const auto pa = pattern_metrics(a), pb = pattern_metrics(b);
    const double from = std::min(pa.peak_angle, pb.peak_angle);
    const double to = std::max(pa.peak_angle, pb.peak_angle);

    // the larger of the two patterns' minimum over the gap is where they cross
    double level = -1.0;
    for (std::size_t i = 0; i < a.angles.size(); ++i) {
        if (a.angles[i] < from || a.angles[i] > to)
            continue;
        level = std::max(level, std::min(a.magnitude[i], b.magnitude[i]));
    }
    if (level <= 0.0)
        throw DegeneratePatternError("beams do not overlap between their peaks");
    return 20.0 * std::log10(level / std::min(pa.peak_magnitude, pb.peak_magnitude));
}

PatternCut incoherent_overlay(std::span<const PatternCut> cuts, bool normalize)
{
    if (cuts.empty())
        throw std::invalid_argument("incoherent overlay needs at least one cut");
    PatternCut out;
    out.angles = cuts.front().angles;
    out.magnitude.assign(out.angles.size(), 0.0);
    out.input_port_label = "all ports (incoherent power sum)";
    for (const auto& c : cuts) {
        if (c.angles != out.angles)
            throw std::invalid_argument("overlay cuts must share one angle grid");
        for (std::size_t i = 0; i < c.magnitude.size(); ++i)
            out.magnitude[i] += c.magnitude[i] * c.magnitude[i];
    }
    for (double& m : out.magnitude)
        m = std::sqrt(m);
    if (normalize) {
        const double peak = *std::max_element(out.magnitude.begin(), out.magnitude.end());
        if (peak > 0.0)
            for (double& m : out.magnitude)
                m /= peak;
    }
    return out;
}

void write_pattern_csv(std::ostream& out, const PatternCut& cut)
{
    cut.validate();
    out << "angle_deg,magnitude_linear,magnitude_db\n";
    for (std::size_t i = 0; i < cut.angles.size(); ++i)
        out << format_sig(rad2deg(cut.angles[i])) << ',' << format_sig(cut.magnitude[i]) << ','
            << format_sig(to_db20(cut.magnitude[i])) << '\n';
}

} // namespace butler::array
