#pragma once

// Touchstone v1 (.sNp) reading and writing.
//
// Layout written:
//   ! comment header (tool, port count, hash of the data block)
//   # <unit> S <RI|MA|DB> R <z_ref>
//   1-port:  f S11
//   2-port:  f S11 S21 S12 S22            (the v1 column order)
//   N >= 3:  f S11 S12 ... one matrix row after another, row-major, a new line for
//            every row and at most four complex pairs per line

#include "butler/scattering.hpp"
#include "butler/units.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace butler::touchstone {

enum class Format { RI, MA, DB };

std::string to_string(Format f);
Format format_from_string(const std::string& text);

struct WriteOptions {
    Format format = Format::RI;
    FrequencyUnit unit = FrequencyUnit::GHz;
    std::vector<std::string> comments; // extra "!" lines after the tool header
};

struct Data {
    int n_ports = 0;
    FrequencyUnit unit = FrequencyUnit::GHz;
    Format format = Format::MA;
    double z_ref = kDefaultZRef;
    FrequencySweep sweep;
};

// Significant digits of every number in the data block.
inline constexpr int kDigits = 12;

/// Throws OrderingError for non-ascending frequencies and ConsistencyError for
/// mixed port counts / reference impedances or an empty sweep.
void write(std::ostream& out, const FrequencySweep& sweep, int n_ports, const WriteOptions& options = {});
void write_file(const std::filesystem::path& path, const FrequencySweep& sweep, int n_ports,
                const WriteOptions& options = {});

/// Parses a v1 stream. Without `n_ports` the port count is inferred from the first
/// data line, which only works for 1- and 2-port data. Errors are ParseError with
/// the offending line number.
Data read(std::istream& in, std::optional<int> n_ports = std::nullopt);

/// Reads a file, taking the port count from its `.sNp` extension when present and
/// cross-checking it against the data.
Data read_file(const std::filesystem::path& path);

/// N from a ".sNp" extension (case-insensitive), if the name has one.
std::optional<int> ports_from_extension(const std::filesystem::path& path);

} // namespace butler::touchstone
