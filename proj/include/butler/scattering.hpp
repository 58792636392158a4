#pragma once

#include "butler/constants.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace butler {

using Complex = std::complex<double>;

// Square matrix of normalized wave ratios at a single frequency.
// Storage is 0-based; s(to, from) uses the 1-based port numbers of the data sheets.
class ScatteringMatrix {
public:
    explicit ScatteringMatrix(int n_ports, double z_ref = kDefaultZRef);
    explicit ScatteringMatrix(Eigen::MatrixXcd entries, double z_ref = kDefaultZRef);

    int n_ports() const noexcept { return static_cast<int>(m_.rows()); }
    double z_ref() const noexcept { return z_ref_; }

    Complex& operator()(int row, int col) { return m_(row, col); }
    const Complex& operator()(int row, int col) const { return m_(row, col); }

    // S_{to,from}, 1-based.
    Complex s(int to, int from) const;

    const Eigen::MatrixXcd& matrix() const noexcept { return m_; }

    // max |S^H S - I|
    double unitarity_error() const;
    // max |S - S^T|
    double reciprocity_error() const;
    // max entrywise |A - B|; matrices must be the same size
    double max_abs_difference(const ScatteringMatrix& other) const;

private:
    Eigen::MatrixXcd m_;
    double z_ref_;
};

struct SweepPoint {
    double frequency;
    ScatteringMatrix s;
};
using FrequencySweep = std::vector<SweepPoint>;

enum class Fidelity { ideal, circuit };

std::string to_string(Fidelity f);
Fidelity fidelity_from_string(const std::string& text);

// Numeric construction parameters of a device, keyed by name. Ordered so the
// JSON form is stable.
using DeviceParams = std::map<std::string, double>;

// Immutable handle over one multiport: evaluate(f) returns its S-matrix at f.
class DeviceModel {
public:
    using Evaluator = std::function<ScatteringMatrix(double)>;

    DeviceModel(std::string kind, DeviceParams params, int n_ports, Fidelity fidelity,
                std::string label, Evaluator evaluate);

    const std::string& kind() const noexcept { return kind_; }
    const DeviceParams& params() const noexcept { return params_; }
    int n_ports() const noexcept { return n_ports_; }
    Fidelity fidelity() const noexcept { return fidelity_; }
    const std::string& label() const noexcept { return label_; }

    // Throws std::invalid_argument for f <= 0 and std::logic_error if the
    // evaluator returns the wrong port count.
    ScatteringMatrix evaluate(double frequency) const;

private:
    std::string kind_;
    DeviceParams params_;
    int n_ports_;
    Fidelity fidelity_;
    std::string label_;
    Evaluator evaluate_;
};

using DevicePtr = std::shared_ptr<const DeviceModel>;

} // namespace butler
