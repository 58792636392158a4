#include "butler/network.hpp"

#include "butler/components.hpp"
#include "butler/errors.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace butler::network {

namespace {

std::string describe(const PortRef& p)
{
    return p.device + "." + std::to_string(p.port);
}

std::string describe(const Connection& c)
{
    return describe(c.a) + " <-> " + describe(c.b);
}

} // namespace

void Netlist::add_device(std::string name, DevicePtr device)
{
    if (!device)
        throw NetlistError("device '" + name + "' is null");
    if (name.empty())
        throw NetlistError("device names must not be empty");
    if (has_device(name))
        throw NetlistError("duplicate device name '" + name + "'");
    devices_.emplace_back(std::move(name), std::move(device));
}

void Netlist::connect(PortRef a, PortRef b)
{
    connections_.push_back({std::move(a), std::move(b)});
}

void Netlist::add_external(PortRef ref, std::string label)
{
    externals_.push_back({std::move(ref), std::move(label)});
}

void Netlist::set_connections(std::vector<Connection> connections)
{
    connections_ = std::move(connections);
}

bool Netlist::has_device(const std::string& name) const
{
    return std::any_of(devices_.begin(), devices_.end(),
                       [&](const auto& d) { return d.first == name; });
}

const DevicePtr& Netlist::device(const std::string& name) const
{
    for (const auto& [n, dev] : devices_)
        if (n == name)
            return dev;
    throw NetlistError("unknown device '" + name + "'");
}

int Netlist::external_index(const std::string& label) const
{
    for (std::size_t i = 0; i < externals_.size(); ++i)
        if (externals_[i].label == label)
            return static_cast<int>(i) + 1;
    throw NetlistError("no external port labelled '" + label + "'");
}

void Netlist::validate() const
{
    // usage count per (device, port)
    std::unordered_map<std::string, std::vector<int>> used;
    for (const auto& [name, dev] : devices_)
        used[name].assign(static_cast<std::size_t>(dev->n_ports()), 0);

    auto mark = [&](const PortRef& p, const char* where) {
        auto it = used.find(p.device);
        if (it == used.end())
            throw NetlistError(std::string(where) + " references unknown device '" + p.device + "'");
        if (p.port < 1 || p.port > static_cast<int>(it->second.size()))
            throw NetlistError(std::string(where) + " references nonexistent port " + describe(p));
        if (++it->second[static_cast<std::size_t>(p.port - 1)] > 1)
            throw NetlistError("port " + describe(p) + " is used more than once");
    };

    for (const auto& c : connections_) {
        if (c.a == c.b)
            throw NetlistError("connection " + describe(c) + " joins a port to itself");
        mark(c.a, "connection");
        mark(c.b, "connection");
    }
    for (const auto& e : externals_)
        mark(e.ref, "external port");

    for (const auto& [name, dev] : devices_) {
        const auto& counts = used[name];
        for (std::size_t p = 0; p < counts.size(); ++p)
            if (counts[p] == 0)
                throw NetlistError("dangling port " + name + "." + std::to_string(p + 1));
    }
    if (externals_.empty())
        throw NetlistError("netlist has no external ports");
}

ScatteringMatrix interconnect(const Netlist& net, double frequency)
{
    std::vector<std::size_t> order(net.connections().size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    return interconnect(net, frequency, order);
}

ScatteringMatrix interconnect(const Netlist& net, double frequency,
                              std::span<const std::size_t> elimination_order)
{
    net.validate();
    const auto& conns = net.connections();
    if (elimination_order.size() != conns.size())
        throw std::invalid_argument("elimination order must list every connection once");
    {
        std::vector<bool> seen(conns.size(), false);
        for (auto i : elimination_order) {
            if (i >= conns.size() || seen[i])
                throw std::invalid_argument("elimination order is not a permutation");
            seen[i] = true;
        }
    }

    // global port numbering: device offsets in declaration order
    std::unordered_map<std::string, int> offset;
    int total = 0;
    for (const auto& [name, dev] : net.devices()) {
        offset[name] = total;
        total += dev->n_ports();
    }
    auto global = [&](const PortRef& p) { return offset.at(p.device) + p.port - 1; };

    double z_ref = kDefaultZRef;
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(total, total);
    for (const auto& [name, dev] : net.devices()) {
        const ScatteringMatrix block = dev->evaluate(frequency);
        z_ref = block.z_ref();
        const int o = offset[name];
        s.block(o, o, block.n_ports(), block.n_ports()) = block.matrix();
    }

    // position[g] = current row of global port g, -1 once eliminated
    std::vector<int> position(static_cast<std::size_t>(total));
    std::iota(position.begin(), position.end(), 0);
    std::vector<int> row_owner(position.begin(), position.end());

    for (auto ci : elimination_order) {
        const Connection& c = conns[ci];
        const int k = position[static_cast<std::size_t>(global(c.a))];
        const int l = position[static_cast<std::size_t>(global(c.b))];
        const int n = static_cast<int>(s.rows());

        const Complex skk = s(k, k), sll = s(l, l), skl = s(k, l), slk = s(l, k);
        const Complex denom = (1.0 - skl) * (1.0 - slk) - skk * sll;
        if (std::abs(denom) < kResonanceTolerance) {
            std::ostringstream os;
            os << "topology resonance at " << frequency << " Hz while joining " << describe(c);
            throw TopologyResonanceError(os.str());
        }

        const Eigen::VectorXcd col_k = s.col(k), col_l = s.col(l);
        const Eigen::RowVectorXcd row_k = s.row(k), row_l = s.row(l);
        Eigen::MatrixXcd grown = s;
        grown.noalias() += (col_l * row_k * (1.0 - slk) + col_k * row_l * (1.0 - skl) +
                            col_k * row_k * sll + col_l * row_l * skk) /
                           denom;

        std::vector<int> keep;
        keep.reserve(static_cast<std::size_t>(n - 2));
        for (int i = 0; i < n; ++i)
            if (i != k && i != l)
                keep.push_back(i);

        Eigen::MatrixXcd reduced(n - 2, n - 2);
        for (int r = 0; r < n - 2; ++r)
            for (int q = 0; q < n - 2; ++q)
                reduced(r, q) = grown(keep[r], keep[q]);
        s = std::move(reduced);

        std::vector<int> owners;
        owners.reserve(keep.size());
        for (int i : keep)
            owners.push_back(row_owner[static_cast<std::size_t>(i)]);
        position[static_cast<std::size_t>(row_owner[static_cast<std::size_t>(k)])] = -1;
        position[static_cast<std::size_t>(row_owner[static_cast<std::size_t>(l)])] = -1;
        row_owner = std::move(owners);
        for (std::size_t i = 0; i < row_owner.size(); ++i)
            position[static_cast<std::size_t>(row_owner[i])] = static_cast<int>(i);
    }

    const auto& ext = net.external_ports();
    const int m = static_cast<int>(ext.size());
    Eigen::MatrixXcd out(m, m);
    for (int r = 0; r < m; ++r) {
        const int pr = position[static_cast<std::size_t>(global(ext[r].ref))];
        for (int q = 0; q < m; ++q)
            out(r, q) = s(pr, position[static_cast<std::size_t>(global(ext[q].ref))]);
    }
    return ScatteringMatrix(std::move(out), z_ref);
}

FrequencySweep evaluate_sweep(const Netlist& net, std::span<const double> frequencies,
                              unsigned max_threads)
{
    net.validate();
    const std::size_t n = frequencies.size();
    unsigned workers = max_threads ? max_threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));

    std::vector<std::optional<ScatteringMatrix>> slots(n);
    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t i = first; i < n; i += stride)
            slots[i].emplace(interconnect(net, frequencies[i]));
    };

    if (workers <= 1) {
        work(0, 1);
    } else {
        std::vector<std::future<void>> jobs;
        for (unsigned w = 0; w < workers; ++w)
            jobs.push_back(std::async(std::launch::async, work, std::size_t{w}, std::size_t{workers}));
        for (auto& j : jobs)
            j.get();
    }

    FrequencySweep sweep;
    sweep.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        sweep.push_back({frequencies[i], std::move(*slots[i])});
    return sweep;
}

std::vector<double> ExcitationResult::adjacent_phase_differences() const
{
    std::vector<double> d;
    for (std::size_t k = 0; k + 1 < output_amplitudes.size(); ++k)
        d.push_back(std::arg(output_amplitudes[k + 1] * std::conj(output_amplitudes[k])));
    return d;
}

double ExcitationResult::progression() const
{
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k + 1 < output_amplitudes.size(); ++k)
        acc += output_amplitudes[k + 1] * std::conj(output_amplitudes[k]);
    return std::arg(acc);
}

std::vector<ExcitationResult> excitations_from_matrix(const ScatteringMatrix& s,
                                                      const Netlist& net, double frequency)
{
    const int n_in = s.n_ports() / 2;
    if (n_in < 1 || s.n_ports() != 2 * n_in)
        throw NetlistError("beamformer netlist needs an even number of external ports");
    std::vector<ExcitationResult> results;
    for (int p = 1; p <= n_in; ++p) {
        ExcitationResult r;
        r.input_port = p;
        if (static_cast<int>(net.external_ports().size()) == s.n_ports())
            r.input_label = net.external_ports()[static_cast<std::size_t>(p - 1)].label;
        r.frequency = frequency;
        for (int k = 1; k <= n_in; ++k)
            r.output_amplitudes.push_back(s.s(n_in + k, p));
        results.push_back(std::move(r));
    }
    return results;
}

ExcitationResult excite(const Netlist& net, int input_port, double frequency)
{
    const int n_in = static_cast<int>(net.external_ports().size()) / 2;
    if (input_port < 1 || input_port > n_in)
        throw std::out_of_range("input port " + std::to_string(input_port) + " outside 1.." +
                                std::to_string(n_in));
    auto all = excitations_from_matrix(interconnect(net, frequency), net, frequency);
    return std::move(all[static_cast<std::size_t>(input_port - 1)]);
}

std::vector<ExcitationResult> excite_all(const Netlist& net, double frequency)
{
    return excitations_from_matrix(interconnect(net, frequency), net, frequency);
}

Netlist build_butler_4x4(Fidelity fidelity, double f0, const microstrip::Substrate& substrate)
{
    if (!(f0 > 0.0))
        throw std::invalid_argument("design frequency must be positive");
    substrate.validate();

    Netlist net;
    const double shift = deg2rad(45.0);

    // 50 ohm line data shared by the shifters (circuit) and the equalizers
    const double w50 = microstrip::synthesize_width(kDefaultZRef, substrate);
    const double e50 = microstrip::effective_permittivity(w50, substrate);
    const double eq_len = microstrip::phase_shift_length(deg2rad(270.0), f0, e50);

    for (const char* h : {"H1", "H2", "H3", "H4"})
        net.add_device(h, fidelity == Fidelity::ideal
                              ? components::ideal_hybrid()
                              : components::branchline_hybrid_circuit(f0, substrate));
    for (const char* c : {"C1", "C2"})
        net.add_device(c, fidelity == Fidelity::ideal ? components::ideal_crossover()
                                                      : components::crossover_circuit(f0, substrate));
    for (const char* p : {"PS1", "PS2"})
        net.add_device(p, fidelity == Fidelity::ideal
                              ? components::phase_shifter(shift, f0)
                              : components::microstrip_phase_shifter(shift, f0, substrate));
    for (const char* e : {"EQ1", "EQ2"})
        net.add_device(e, components::tline(kDefaultZRef, eq_len, e50));

    // first hybrid stage -> shifters / middle crossover
    net.connect({"H1", 2}, {"PS1", 1});
    net.connect({"H1", 3}, {"C1", 1});
    net.connect({"H2", 2}, {"C1", 2});
    net.connect({"H2", 3}, {"PS2", 1});
    // -> second hybrid stage
    net.connect({"PS1", 2}, {"H3", 1});
    net.connect({"C1", 4}, {"H3", 4});
    net.connect({"C1", 3}, {"H4", 1});
    net.connect({"PS2", 2}, {"H4", 4});
    // -> output crossover and equalizers
    net.connect({"H3", 3}, {"EQ1", 1});
    net.connect({"H3", 2}, {"C2", 1});
    net.connect({"H4", 3}, {"C2", 2});
    net.connect({"H4", 2}, {"EQ2", 1});

    net.add_external({"H1", 1}, "1R");
    net.add_external({"H1", 4}, "2L");
    net.add_external({"H2", 1}, "2R");
    net.add_external({"H2", 4}, "1L");
    net.add_external({"EQ2", 2}, "A1");
    net.add_external({"C2", 3}, "A2");
    net.add_external({"C2", 4}, "A3");
    net.add_external({"EQ1", 2}, "A4");

    net.validate();
    return net;
}

DeviceCensus census(const Netlist& net)
{
    DeviceCensus c;
    for (const auto& [name, dev] : net.devices()) {
        const auto& k = dev->kind();
        if (k == "ideal_hybrid" || k == "branchline_hybrid")
            ++c.hybrids;
        else if (k == "ideal_crossover" || k == "circuit_crossover")
            ++c.crossovers;
        else if (k == "phase_shifter" || k == "microstrip_phase_shifter")
            ++c.phase_shifters;
        else if (k == "tline")
            ++c.lines;
        else
            ++c.other;
    }
    return c;
}

nlohmann::ordered_json to_json(const Netlist& net)
{
    using nlohmann::ordered_json;
    auto port = [](const PortRef& p) {
        ordered_json j;
        j["device"] = p.device;
        j["port"] = p.port;
        return j;
    };

    ordered_json doc;
    doc["devices"] = ordered_json::array();
    for (const auto& [name, dev] : net.devices()) {
        ordered_json d;
        d["name"] = name;
        d["kind"] = dev->kind();
        d["params"] = ordered_json::object();
        for (const auto& [key, value] : dev->params())
            d["params"][key] = value;
        doc["devices"].push_back(std::move(d));
    }
    doc["connections"] = ordered_json::array();
    for (const auto& c : net.connections())
        doc["connections"].push_back(ordered_json::array({port(c.a), port(c.b)}));
    doc["external_ports"] = ordered_json::array();
    for (const auto& e : net.external_ports()) {
        ordered_json j = port(e.ref);
        j["label"] = e.label;
        doc["external_ports"].push_back(std::move(j));
    }
    return doc;
}

Netlist netlist_from_json(const nlohmann::json& doc)
{
    auto port = [](const nlohmann::json& j) {
        return PortRef{j.at("device").get<std::string>(), j.at("port").get<int>()};
    };

    try {
        Netlist net;
        for (const auto& d : doc.at("devices")) {
            DeviceParams params;
            if (d.contains("params"))
                for (const auto& [key, value] : d.at("params").items())
                    params[key] = value.get<double>();
            net.add_device(d.at("name").get<std::string>(),
                           components::make_device(d.at("kind").get<std::string>(), params));
        }
        for (const auto& c : doc.at("connections")) {
            if (!c.is_array() || c.size() != 2)
                throw NetlistError("each connection must be a pair of port references");
            net.connect(port(c[0]), port(c[1]));
        }
        for (const auto& e : doc.at("external_ports"))
            net.add_external(port(e), e.value("label", std::string{}));
        net.validate();
        return net;
    } catch (const nlohmann::json::exception& e) {
        throw NetlistError(std::string("malformed netlist document: ") + e.what());
    }
}

} // namespace butler::network
