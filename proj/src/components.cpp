#include "butler/components.hpp"

#include "butler/errors.hpp"
#include "butler/network.hpp"

#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace butler::components {

namespace {

using microstrip::Substrate;

constexpr Complex j{0.0, 1.0};

void require_positive(double value, const char* what)
{
    if (!(value > 0.0) || !std::isfinite(value))
        throw std::invalid_argument(std::string(what) + " must be finite and positive");
}

DevicePtr constant_device(std::string kind, std::string label, Eigen::MatrixXcd m)
{
    const int n = static_cast<int>(m.rows());
    ScatteringMatrix s(std::move(m));
    return std::make_shared<const DeviceModel>(std::move(kind), DeviceParams{}, n, Fidelity::ideal,
                                               std::move(label), [s](double) { return s; });
}

DeviceParams substrate_params(double f0, const Substrate& s)
{
    return {{"f0_hz", f0}, {"epsilon_r", s.epsilon_r}, {"height_m", s.height_h}};
}

double param(const DeviceParams& p, const std::string& kind, const char* key)
{
    auto it = p.find(key);
    if (it == p.end())
        throw NetlistError("device kind '" + kind + "' needs parameter '" + key + "'");
    return it->second;
}

// Wiring shared by the hybrid netlist; corners J1..J4 sit at ports 1..4.
network::Netlist branchline_netlist(double f0, const Substrate& substrate)
{
    const double z_series = kDefaultZRef / std::sqrt(2.0);
    const double w_series = microstrip::synthesize_width(z_series, substrate);
    const double w_shunt = microstrip::synthesize_width(kDefaultZRef, substrate);
    const double e_series = microstrip::effective_permittivity(w_series, substrate);
    const double e_shunt = microstrip::effective_permittivity(w_shunt, substrate);
    const double l_series = microstrip::quarter_wave_length(f0, e_series);
    const double l_shunt = microstrip::quarter_wave_length(f0, e_shunt);

    network::Netlist net;
    for (const char* name : {"J1", "J2", "J3", "J4"})
        net.add_device(name, junction(3));
    net.add_device("T12", tline(z_series, l_series, e_series));
    net.add_device("T43", tline(z_series, l_series, e_series));
    net.add_device("T14", tline(kDefaultZRef, l_shunt, e_shunt));
    net.add_device("T23", tline(kDefaultZRef, l_shunt, e_shunt));
    for (const char* name : {"F1", "F2", "F3", "F4"})
        net.add_device(name, tline(kDefaultZRef, l_shunt, e_shunt));

    net.connect({"J1", 2}, {"T12", 1});
    net.connect({"T12", 2}, {"J2", 2});
    net.connect({"J4", 2}, {"T43", 1});
    net.connect({"T43", 2}, {"J3", 2});
    net.connect({"J1", 3}, {"T14", 1});
    net.connect({"T14", 2}, {"J4", 3});
    net.connect({"J2", 3}, {"T23", 1});
    net.connect({"T23", 2}, {"J3", 3});
    net.connect({"J1", 1}, {"F1", 1});
    net.connect({"J2", 1}, {"F2", 1});
    net.connect({"J3", 1}, {"F3", 1});
    net.connect({"J4", 1}, {"F4", 1});

    net.add_external({"F1", 2}, "1");
    net.add_external({"F2", 2}, "2");
    net.add_external({"F3", 2}, "3");
    net.add_external({"F4", 2}, "4");
    return net;
}

DevicePtr netlist_device(std::string kind, DeviceParams params, std::string label,
                         network::Netlist net)
{
    auto shared = std::make_shared<const network::Netlist>(std::move(net));
    const int n = static_cast<int>(shared->external_ports().size());
    return std::make_shared<const DeviceModel>(
        std::move(kind), std::move(params), n, Fidelity::circuit, std::move(label),
        [shared](double f) { return network::interconnect(*shared, f); });
}

} // namespace

ScatteringMatrix abcd_to_s(const Eigen::Matrix2cd& abcd, double z_ref)
{
    const Complex a = abcd(0, 0), b = abcd(0, 1), c = abcd(1, 0), d = abcd(1, 1);
    const Complex den = a + b / z_ref + c * z_ref + d;
    Eigen::MatrixXcd s(2, 2);
    s(0, 0) = (a + b / z_ref - c * z_ref - d) / den;
    s(0, 1) = 2.0 * (a * d - b * c) / den;
    s(1, 0) = 2.0 / den;
    s(1, 1) = (-a + b / z_ref - c * z_ref + d) / den;
    return ScatteringMatrix(std::move(s), z_ref);
}

Eigen::Matrix2cd tline_abcd(double z0, double theta)
{
    Eigen::Matrix2cd m;
    m << std::cos(theta), j * z0 * std::sin(theta), j * std::sin(theta) / z0, std::cos(theta);
    return m;
}

DevicePtr ideal_hybrid()
{
    Eigen::MatrixXcd m(4, 4);
    m << 0, j, 1, 0,
         j, 0, 0, 1,
         1, 0, 0, j,
         0, 1, j, 0;
    m /= std::sqrt(2.0);
    return constant_device("ideal_hybrid",
                           "90 deg hybrid (1 in, 2 through, 3 coupled, 4 isolated)", std::move(m));
}

DevicePtr ideal_crossover()
{
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 2) = m(2, 0) = j;
    m(1, 3) = m(3, 1) = j;
    return constant_device("ideal_crossover", "crossover (1->3, 2->4)", std::move(m));
}

DevicePtr phase_shifter(double phi0, double f0)
{
    require_positive(f0, "phase shifter design frequency");
    if (!std::isfinite(phi0))
        throw std::invalid_argument("phase shifter phase must be finite");
    std::ostringstream label;
    label << "phase shifter " << -rad2deg(phi0) << " deg at " << f0 << " Hz (1 in, 2 out)";
    return std::make_shared<const DeviceModel>(
        "phase_shifter", DeviceParams{{"phi0_rad", phi0}, {"f0_hz", f0}}, 2, Fidelity::ideal,
        label.str(), [phi0, f0](double f) {
            ScatteringMatrix s(2);
            const Complex t = std::polar(1.0, -phi0 * f / f0);
            s(0, 1) = s(1, 0) = t;
            return s;
        });
}

DevicePtr tline(double z0, double length, double eps_reff)
{
    require_positive(z0, "line impedance");
    require_positive(length, "line length");
    if (!(eps_reff >= 1.0))
        throw std::invalid_argument("line eps_reff must be >= 1");
    std::ostringstream label;
    label << "line " << z0 << " ohm, " << length * 1e3 << " mm (1 in, 2 out)";
    return std::make_shared<const DeviceModel>(
        "tline", DeviceParams{{"z0_ohm", z0}, {"length_m", length}, {"eps_reff", eps_reff}}, 2,
        Fidelity::circuit, label.str(), [z0, length, eps_reff](double f) {
            const double theta = 2.0 * kPi * length / microstrip::guided_wavelength(f, eps_reff);
            return abcd_to_s(tline_abcd(z0, theta));
        });
}

DevicePtr matched_load()
{
    return constant_device("matched_load", "matched load", Eigen::MatrixXcd::Zero(1, 1));
}

DevicePtr junction(int n_ports)
{
    if (n_ports < 2)
        throw std::invalid_argument("junction needs at least two ports");
    ScatteringMatrix s(Eigen::MatrixXcd::Constant(n_ports, n_ports, 2.0 / n_ports) -
                       Eigen::MatrixXcd::Identity(n_ports, n_ports));
    return std::make_shared<const DeviceModel>(
        "junction", DeviceParams{{"n_ports", static_cast<double>(n_ports)}}, n_ports,
        Fidelity::ideal, std::to_string(n_ports) + "-port parallel junction",
        [s](double) { return s; });
}

DevicePtr branchline_hybrid_circuit(double f0, const Substrate& substrate)
{
    require_positive(f0, "hybrid design frequency");
    substrate.validate();
    return netlist_device("branchline_hybrid", substrate_params(f0, substrate),
                          "branch-line hybrid (1 in, 2 through, 3 coupled, 4 isolated)",
                          branchline_netlist(f0, substrate));
}

DevicePtr crossover_circuit(double f0, const Substrate& substrate)
{
    require_positive(f0, "crossover design frequency");
    substrate.validate();
    network::Netlist net;
    net.add_device("A", branchline_hybrid_circuit(f0, substrate));
    net.add_device("B", branchline_hybrid_circuit(f0, substrate));
    net.connect({"A", 2}, {"B", 1});
    net.connect({"A", 3}, {"B", 4});
    net.add_external({"A", 1}, "1");
    net.add_external({"A", 4}, "2");
    net.add_external({"B", 3}, "3");
    net.add_external({"B", 2}, "4");
    return netlist_device("circuit_crossover", substrate_params(f0, substrate),
                          "cascaded-hybrid crossover (1->3, 2->4)", std::move(net));
}

DevicePtr microstrip_phase_shifter(double phi0, double f0, const Substrate& substrate)
{
    require_positive(f0, "phase shifter design frequency");
    require_positive(phi0, "phase shifter phase");
    const double w = microstrip::synthesize_width(kDefaultZRef, substrate);
    const double e = microstrip::effective_permittivity(w, substrate);
    const double len = microstrip::phase_shift_length(phi0, f0, e);
    auto line = tline(kDefaultZRef, len, e);
    DeviceParams params = substrate_params(f0, substrate);
    params["phi0_rad"] = phi0;
    std::ostringstream label;
    label << "microstrip phase shifter " << -rad2deg(phi0) << " deg, " << len * 1e3
          << " mm (1 in, 2 out)";
    return std::make_shared<const DeviceModel>("microstrip_phase_shifter", std::move(params), 2,
                                               Fidelity::circuit, label.str(),
                                               [line](double f) { return line->evaluate(f); });
}

DevicePtr make_device(const std::string& kind, const DeviceParams& p)
{
    auto substrate = [&] {
        return Substrate{param(p, kind, "epsilon_r"), param(p, kind, "height_m")};
    };
    if (kind == "ideal_hybrid")
        return ideal_hybrid();
    if (kind == "ideal_crossover")
        return ideal_crossover();
    if (kind == "matched_load")
        return matched_load();
    if (kind == "phase_shifter")
        return phase_shifter(param(p, kind, "phi0_rad"), param(p, kind, "f0_hz"));
    if (kind == "tline")
        return tline(param(p, kind, "z0_ohm"), param(p, kind, "length_m"), param(p, kind, "eps_reff"));
    if (kind == "junction") {
        const double n = param(p, kind, "n_ports");
        if (n != std::floor(n))
            throw NetlistError("junction n_ports must be an integer");
        return junction(static_cast<int>(n));
    }
    if (kind == "branchline_hybrid")
        return branchline_hybrid_circuit(param(p, kind, "f0_hz"), substrate());
    if (kind == "circuit_crossover")
        return crossover_circuit(param(p, kind, "f0_hz"), substrate());
    if (kind == "microstrip_phase_shifter")
        return microstrip_phase_shifter(param(p, kind, "phi0_rad"), param(p, kind, "f0_hz"),
                                        substrate());
    throw NetlistError("unknown device kind '" + kind + "'");
}

} // namespace butler::components
