#pragma once

// S-parameter models of the Butler matrix building blocks. Every device is
// referenced to 50 ohm and reciprocal.
//
// Port conventions
//   hybrid:     1 input, 2 through, 3 coupled, 4 isolated (1 and 4 on one side)
//   crossover:  1 -> 3 and 2 -> 4 (1, 2 on one side; 3, 4 opposite)
//   two-ports:  1 in, 2 out

#include "butler/microstrip.hpp"
#include "butler/scattering.hpp"

#include <Eigen/Dense>

#include <string>

namespace butler::components {

/// (1/sqrt2) [[0 j 1 0] [j 0 0 1] [1 0 0 j] [0 1 j 0]] at every frequency.
DevicePtr ideal_hybrid();

/// S13 = S31 = S24 = S42 = j, all other entries 0.
DevicePtr ideal_crossover();

/// Matched delay: S21 = S12 = exp(-j phi0 f / f0). Positive phi0 is a delay, so
/// phi0 = 45 deg reads -45 deg at f0.
DevicePtr phase_shifter(double phi0, double f0);

/// Lossless line of impedance z0, physical length `length` and effective
/// permittivity eps_reff, referenced to 50 ohm. See abcd_to_s().
DevicePtr tline(double z0, double length, double eps_reff);

/// 1-port reflectionless termination.
DevicePtr matched_load();

/// Ideal parallel junction of n equal-impedance ports: S = (2/n) ones - I.
DevicePtr junction(int n_ports);

/// Branch-line coupler built from quarter-wave microstrip arms: two series arms at
/// 50/sqrt2 ohm (1-2, 4-3) and two shunt arms at 50 ohm (1-4, 2-3), corners joined by
/// ideal 3-port junctions, plus a quarter-wave 50 ohm access line on each port.
/// The access lines put the reference planes where the matrix equals ideal_hybrid()
/// at f0.
DevicePtr branchline_hybrid_circuit(double f0, const microstrip::Substrate& substrate);

/// Two branchline_hybrid_circuit devices cascaded (A.2-B.1, A.3-B.4). External
/// ports [A.1, A.4, B.3, B.2] give the crossover port convention.
DevicePtr crossover_circuit(double f0, const microstrip::Substrate& substrate);

/// 50 ohm microstrip line cut to phi0 at f0.
DevicePtr microstrip_phase_shifter(double phi0, double f0, const microstrip::Substrate& substrate);

/// Rebuilds a device from its kind and parameters (the netlist JSON form).
DevicePtr make_device(const std::string& kind, const DeviceParams& params);

/// ABCD (voltage-current transfer) matrix of a two-port to S, both ports at z_ref:
///
///   D   = A + B/z + C z + D
///   S11 = (A + B/z - C z - D) / D      S12 = 2 (AD - BC) / D
///   S21 = 2 / D                        S22 = (-A + B/z - C z + D) / D
ScatteringMatrix abcd_to_s(const Eigen::Matrix2cd& abcd, double z_ref = kDefaultZRef);

/// ABCD matrix of a lossless line with electrical length theta:
/// [[cos t, j z0 sin t], [j sin t / z0, cos t]].
Eigen::Matrix2cd tline_abcd(double z0, double theta);

} // namespace butler::components
