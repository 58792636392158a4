#include "butler/scattering.hpp"

#include "butler/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace butler {

ScatteringMatrix::ScatteringMatrix(int n_ports, double z_ref)
    : m_(Eigen::MatrixXcd::Zero(n_ports, n_ports)), z_ref_(z_ref)
{
    if (n_ports < 1)
        throw std::invalid_argument("scattering matrix needs at least one port");
}

ScatteringMatrix::ScatteringMatrix(Eigen::MatrixXcd entries, double z_ref)
    : m_(std::move(entries)), z_ref_(z_ref)
{
    if (m_.rows() < 1 || m_.rows() != m_.cols())
        throw std::invalid_argument("scattering matrix must be square with at least one port");
}

Complex ScatteringMatrix::s(int to, int from) const
{
    if (to < 1 || from < 1 || to > n_ports() || from > n_ports())
        throw std::out_of_range("S-parameter index out of range");
    return m_(to - 1, from - 1);
}

double ScatteringMatrix::unitarity_error() const
{
    const Eigen::MatrixXcd g = m_.adjoint() * m_ - Eigen::MatrixXcd::Identity(m_.rows(), m_.cols());
    return g.cwiseAbs().maxCoeff();
}

double ScatteringMatrix::reciprocity_error() const
{
    return (m_ - m_.transpose()).cwiseAbs().maxCoeff();
}

double ScatteringMatrix::max_abs_difference(const ScatteringMatrix& other) const
{
    if (other.n_ports() != n_ports())
        throw std::invalid_argument("cannot compare matrices of different size");
    return (m_ - other.m_).cwiseAbs().maxCoeff();
}

std::string to_string(Fidelity f)
{
    return f == Fidelity::ideal ? "ideal" : "circuit";
}

Fidelity fidelity_from_string(const std::string& text)
{
    if (text == "ideal")
        return Fidelity::ideal;
    if (text == "circuit")
        return Fidelity::circuit;
    throw std::invalid_argument("unknown fidelity '" + text + "' (expected ideal or circuit)");
}

DeviceModel::DeviceModel(std::string kind, DeviceParams params, int n_ports, Fidelity fidelity,
                         std::string label, Evaluator evaluate)
    : kind_(std::move(kind)), params_(std::move(params)), n_ports_(n_ports), fidelity_(fidelity),
      label_(std::move(label)), evaluate_(std::move(evaluate))
{
    if (n_ports_ < 1)
        throw std::invalid_argument("device needs at least one port");
    if (!evaluate_)
        throw std::invalid_argument("device needs an evaluator");
}

ScatteringMatrix DeviceModel::evaluate(double frequency) const
{
    if (!(frequency > 0.0) || !std::isfinite(frequency))
        throw std::invalid_argument("device '" + kind_ + "' evaluated at non-positive frequency");
    ScatteringMatrix s = evaluate_(frequency);
    if (s.n_ports() != n_ports_)
        throw std::logic_error("device '" + kind_ + "' returned a matrix of the wrong size");
    return s;
}

} // namespace butler
