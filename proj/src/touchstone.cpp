#include "butler/touchstone.hpp"

#include "butler/errors.hpp"
#include "butler/format.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace butler::touchstone {

namespace {

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::pair<double, double> encode(Complex v, Format f)
{
    switch (f) {
    case Format::RI: return {v.real(), v.imag()};
    case Format::MA:
        return {std::abs(v), std::abs(v) > 0.0 ? rad2deg(std::arg(v)) : 0.0};
    case Format::DB:
        return {to_db20(std::abs(v)), std::abs(v) > 0.0 ? rad2deg(std::arg(v)) : 0.0};
    }
    return {0.0, 0.0};
}

Complex decode(double a, double b, Format f)
{
    switch (f) {
    case Format::RI: return {a, b};
    case Format::MA: return std::polar(a, deg2rad(b));
    case Format::DB: return std::polar(std::pow(10.0, a / 20.0), deg2rad(b));
    }
    return {};
}

// (row, col) of the k-th complex value of a record, 0-based.
std::pair<int, int> entry_position(int k, int n)
{
    if (n == 2) {
        static constexpr int rows[] = {0, 1, 0, 1};
        static constexpr int cols[] = {0, 0, 1, 1};
        return {rows[k], cols[k]};
    }
    return {k / n, k % n};
}

} // namespace

std::string to_string(Format f)
{
    switch (f) {
    case Format::RI: return "RI";
    case Format::MA: return "MA";
    case Format::DB: return "DB";
    }
    return "RI";
}

Format format_from_string(const std::string& text)
{
    const std::string t = lower(text);
    if (t == "ri")
        return Format::RI;
    if (t == "ma")
        return Format::MA;
    if (t == "db")
        return Format::DB;
    throw std::invalid_argument("unknown Touchstone format '" + text + "' (expected RI, MA or DB)");
}

void write(std::ostream& out, const FrequencySweep& sweep, int n_ports, const WriteOptions& options)
{
    if (sweep.empty())
        throw ConsistencyError("cannot write an empty sweep");
    if (n_ports < 1)
        throw ConsistencyError("port count must be positive");
    const double z_ref = sweep.front().s.z_ref();
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        if (sweep[i].s.n_ports() != n_ports)
            throw ConsistencyError("sweep mixes port counts: expected " + std::to_string(n_ports) +
                                   ", got " + std::to_string(sweep[i].s.n_ports()));
        if (sweep[i].s.z_ref() != z_ref)
            throw ConsistencyError("sweep mixes reference impedances");
        if (i > 0 && !(sweep[i].frequency > sweep[i - 1].frequency))
            throw OrderingError("frequencies must be strictly ascending");
    }

    const double scale = unit_scale(options.unit);
    std::ostringstream data;
    for (const auto& point : sweep) {
        data << format_sig(point.frequency / scale, kDigits);
        const int count = n_ports * n_ports;
        for (int k = 0; k < count; ++k) {
            const auto [r, c] = entry_position(k, n_ports);
            const auto [a, b] = encode(point.s(r, c), options.format);
            if (n_ports >= 3 && k > 0 && (k % n_ports == 0 || (k % n_ports) % 4 == 0))
                data << '\n';
            data << ' ' << format_sig(a, kDigits) << ' ' << format_sig(b, kDigits);
        }
        data << '\n';
    }
    const std::string block = data.str();

    out << "! butler toolkit Touchstone v1 writer\n";
    out << "! ports: " << n_ports << ", points: " << sweep.size() << '\n';
    out << "! input-hash: fnv1a64:" << hex64(fnv1a64(block)) << '\n';
    for (const auto& c : options.comments)
        out << "! " << c << '\n';
    out << "# " << butler::to_string(options.unit) << " S " << to_string(options.format) << " R "
        << format_sig(z_ref, kDigits) << '\n';
    out << block;
}

void write_file(const std::filesystem::path& path, const FrequencySweep& sweep, int n_ports,
                const WriteOptions& options)
{
    std::ostringstream buf;
    write(buf, sweep, n_ports, options);
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot open '" + path.string() + "' for writing");
    f << buf.str();
    if (!f)
        throw Error("failed writing '" + path.string() + "'");
}

std::optional<int> ports_from_extension(const std::filesystem::path& path)
{
    const std::string ext = lower(path.extension().string());
    if (ext.size() < 4 || ext[1] != 's' || ext.back() != 'p')
        return std::nullopt;
    const std::string digits = ext.substr(2, ext.size() - 3);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                       [](unsigned char c) { return std::isdigit(c); }))
        return std::nullopt;
    const int n = std::atoi(digits.c_str());
    return n > 0 ? std::optional<int>(n) : std::nullopt;
}

Data read(std::istream& in, std::optional<int> n_ports)
{
    Data result;
    bool have_options = false;
    bool have_data = false;
    int n = n_ports.value_or(0);

    std::vector<double> record;
    int record_line = 0;
    std::size_t record_size = 0;

    auto finish_record = [&](int line_no) {
        ScatteringMatrix s(n, result.z_ref);
        for (int k = 0; k < n * n; ++k) {
            const auto [r, c] = entry_position(k, n);
            s(r, c) = decode(record[static_cast<std::size_t>(1 + 2 * k)],
                             record[static_cast<std::size_t>(2 + 2 * k)], result.format);
        }
        const double f = record[0] * unit_scale(result.unit);
        if (!result.sweep.empty() && !(f > result.sweep.back().frequency))
            throw ParseError("frequencies must be strictly ascending", line_no);
        result.sweep.push_back({f, std::move(s)});
        record.clear();
    };

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto bang = raw.find('!'); bang != std::string::npos)
            raw.erase(bang);
        std::istringstream tokens(raw);
        std::vector<std::string> words;
        for (std::string w; tokens >> w;)
            words.push_back(w);
        if (words.empty())
            continue;

        if (words.front().front() == '#') {
            if (have_data)
                throw ParseError("option line after network data", line_no);
            if (have_options)
                continue; // v1: only the first option line counts
            have_options = true;
            if (words.front().size() > 1)
                words.front().erase(0, 1);
            else
                words.erase(words.begin());
            for (std::size_t i = 0; i < words.size(); ++i) {
                const std::string w = lower(words[i]);
                if (w == "hz" || w == "khz" || w == "mhz" || w == "ghz")
                    result.unit = frequency_unit_from_string(w);
                else if (w == "ri" || w == "ma" || w == "db")
                    result.format = format_from_string(w);
                else if (w == "s")
                    continue;
                else if (w == "y" || w == "z" || w == "h" || w == "g")
                    throw ParseError("only S-parameter data is supported (got " + words[i] + ")", line_no);
                else if (w == "r") {
                    if (i + 1 >= words.size())
                        throw ParseError("option line 'R' needs a reference impedance", line_no);
                    char* end = nullptr;
                    const std::string& z = words[++i];
                    result.z_ref = std::strtod(z.c_str(), &end);
                    if (end == z.c_str() || *end != '\0' || !(result.z_ref > 0.0))
                        throw ParseError("bad reference impedance '" + z + "'", line_no);
                } else
                    throw ParseError("malformed option line: unexpected '" + words[i] + "'", line_no);
            }
            continue;
        }

        std::vector<double> values;
        values.reserve(words.size());
        for (const auto& w : words) {
            char* end = nullptr;
            const double v = std::strtod(w.c_str(), &end);
            if (end == w.c_str() || *end != '\0')
                throw ParseError("non-numeric token '" + w + "'", line_no);
            values.push_back(v);
        }
        have_data = true;

        if (n == 0) {
            if (values.size() == 3)
                n = 1;
            else if (values.size() == 9)
                n = 2;
            else
                throw ParseError("cannot infer the port count from a data line of " +
                                     std::to_string(values.size()) + " values",
                                 line_no);
        }
        if (record_size == 0)
            record_size = 1 + 2 * static_cast<std::size_t>(n) * static_cast<std::size_t>(n);

        const bool starts_record = record.empty();
        if (starts_record)
            record_line = line_no;
        std::size_t line_limit;
        if (n <= 2)
            line_limit = record_size;
        else
            line_limit = 2 * 4 + (starts_record ? 1 : 0);

        if ((n <= 2 && values.size() != record_size) || values.size() > line_limit ||
            record.size() + values.size() > record_size)
            throw ParseError("data line has " + std::to_string(values.size()) +
                                 " values, which does not fit a " + std::to_string(n) + "-port record",
                             line_no);
        record.insert(record.end(), values.begin(), values.end());
        if (record.size() == record_size)
            finish_record(record_line);
    }

    if (!record.empty())
        throw ParseError("incomplete " + std::to_string(n) + "-port record at end of data", record_line);
    if (result.sweep.empty())
        throw ParseError("no network data found", line_no);
    result.n_ports = n;
    return result;
}

Data read_file(const std::filesystem::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot open '" + path.string() + "'");
    try {
        return read(f, ports_from_extension(path));
    } catch (const ParseError& e) {
        throw ParseError(e.message(), e.line(), path.filename().string());
    }
}

} // namespace butler::touchstone
