#pragma once

#include "butler/microstrip.hpp"
#include "butler/scattering.hpp"

#include "json.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace butler::network {

// Port of a named device; `port` is 1-based, as on the device's label.
struct PortRef {
    std::string device;
    int port = 0;

    friend bool operator==(const PortRef&, const PortRef&) = default;
};

struct Connection {
    PortRef a;
    PortRef b;
};

struct ExternalPort {
    PortRef ref;
    std::string label;
};

// Devices plus the wiring between their ports. Every device port must be either
// in exactly one connection or exactly one external slot.
class Netlist {
public:
    void add_device(std::string name, DevicePtr device);
    void connect(PortRef a, PortRef b);
    void add_external(PortRef ref, std::string label = {});

    // Replaces the connection list, e.g. to try a different elimination order.
    void set_connections(std::vector<Connection> connections);

    const std::vector<std::pair<std::string, DevicePtr>>& devices() const noexcept { return devices_; }
    const std::vector<Connection>& connections() const noexcept { return connections_; }
    const std::vector<ExternalPort>& external_ports() const noexcept { return externals_; }

    const DevicePtr& device(const std::string& name) const;
    bool has_device(const std::string& name) const;

    // 1-based index of the external port carrying `label`.
    int external_index(const std::string& label) const;

    // Throws NetlistError on unknown devices, out-of-range ports, ports used
    // twice, or dangling ports.
    void validate() const;

private:
    std::vector<std::pair<std::string, DevicePtr>> devices_;
    std::vector<Connection> connections_;
    std::vector<ExternalPort> externals_;
};

// Resonance threshold for the connection denominator.
inline constexpr double kResonanceTolerance = 1e-12;

/// S-matrix seen at the netlist's external ports, in their declared order.
///
/// Sub-network growth: all device matrices are placed block-diagonally, then each
/// connection (k, l) is eliminated in turn with the two-port join formula
///
///   S'_ij = S_ij + [ S_kj S_il (1 - S_lk) + S_lj S_ik (1 - S_kl)
///                    + S_kj S_ll S_ik + S_lj S_kk S_il ] / D
///   D     = (1 - S_kl)(1 - S_lk) - S_kk S_ll
///
/// after which rows/columns k and l are dropped. |D| < kResonanceTolerance raises
/// TopologyResonanceError naming the connection.
ScatteringMatrix interconnect(const Netlist& net, double frequency);

/// As above, eliminating connections in the given order (a permutation of
/// 0..connections().size()-1).
ScatteringMatrix interconnect(const Netlist& net, double frequency,
                              std::span<const std::size_t> elimination_order);

/// Evaluates interconnect() for every frequency, fanning out over worker threads.
/// Results are in the order of `frequencies`.
FrequencySweep evaluate_sweep(const Netlist& net, std::span<const double> frequencies,
                              unsigned max_threads = 0);

// Waves at the array ports for a unit wave into one input port.
struct ExcitationResult {
    int input_port = 0;
    std::string input_label;
    std::vector<Complex> output_amplitudes;
    double frequency = 0.0;

    // arg(a_{k+1} / a_k) for k = 1..n-1, radians in (-pi, pi].
    std::vector<double> adjacent_phase_differences() const;
    // Circular mean of the adjacent differences, radians in (-pi, pi].
    double progression() const;
};

/// Drives input `input_port` (1-based, 1..n/2) of a 2n-port beamformer netlist.
ExcitationResult excite(const Netlist& net, int input_port, double frequency);

/// excite() for every input port, sharing one network evaluation.
std::vector<ExcitationResult> excite_all(const Netlist& net, double frequency);

/// Excitation vectors taken from an already evaluated 2n-port matrix.
std::vector<ExcitationResult> excitations_from_matrix(const ScatteringMatrix& s,
                                                      const Netlist& net, double frequency);

// ---------------------------------------------------------------------------
// 4x4 Butler matrix

inline const std::vector<std::string> kButlerInputLabels = {"1R", "2L", "2R", "1L"};
inline const std::vector<std::string> kButlerOutputLabels = {"A1", "A2", "A3", "A4"};

/// Netlist of the 4x4 Butler matrix. External ports are ordered
/// [1R, 2L, 2R, 1L, A1, A2, A3, A4].
///
/// Wiring (hybrid ports: 1 in, 2 through, 3 coupled, 4 isolated):
///
///   1R -> H1.1   2L -> H1.4   2R -> H2.1   1L -> H2.4
///   H1.2 -> PS1 -> H3.1          (-45 deg, through path of 1R)
///   H1.3 -> C1.1, C1.3 -> H4.1   (middle lines cross)
///   H2.2 -> C1.2, C1.4 -> H3.4
///   H2.3 -> PS2 -> H4.4          (-45 deg, through path of 1L)
///   H3.3 -> EQ1 -> A4            H3.2 -> C2.1, C2.3 -> A2
///   H4.2 -> EQ2 -> A1            H4.3 -> C2.2, C2.4 -> A3
///
/// EQ1/EQ2 are 50 ohm matched lines of 270 deg at f0; they carry the same phase
/// as the output crossover at f0 so the outer and middle outputs stay aligned.
///
/// Ideal fidelity uses the textbook hybrid/crossover/shifter matrices; circuit
/// fidelity uses branch-line hybrids, cascaded-hybrid crossovers and microstrip
/// shifter lines synthesized on `substrate`.
Netlist build_butler_4x4(Fidelity fidelity, double f0, const microstrip::Substrate& substrate);

struct DeviceCensus {
    int hybrids = 0;
    int crossovers = 0;
    int phase_shifters = 0;
    int lines = 0;
    int other = 0;
};

DeviceCensus census(const Netlist& net);

// ---------------------------------------------------------------------------
// JSON form
//
//   {
//     "devices": [ {"name": "H1", "kind": "ideal_hybrid", "params": {}} , ... ],
//     "connections": [ [{"device": "H1", "port": 2}, {"device": "PS1", "port": 1}], ... ],
//     "external_ports": [ {"device": "H1", "port": 1, "label": "1R"}, ... ]
//   }

nlohmann::ordered_json to_json(const Netlist& net);
Netlist netlist_from_json(const nlohmann::json& doc);

} // namespace butler::network
