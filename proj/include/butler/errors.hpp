#pragma once

#include <stdexcept>
#include <string>

namespace butler {

// Base of every error raised by the toolkit. The CLI prints what() as its single
// diagnostic line.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Impedance outside the validity range of the closed-form width synthesis.
class SynthesisRangeError : public Error {
public:
    using Error::Error;
};

// Frequency / substrate combination for which a closed-form design has no
// physical solution (e.g. negative patch length).
class DesignRangeError : public Error {
public:
    using Error::Error;
};

// Inverse problem without a solution (inset feed for r_target > r_edge).
class NoSolutionError : public Error {
public:
    using Error::Error;
};

class NetlistError : public Error {
public:
    using Error::Error;
};

// Elimination step whose denominator vanished: the lossless loop closed by the
// named connection is resonant at this frequency.
class TopologyResonanceError : public Error {
public:
    using Error::Error;
};

// Progressive phase larger than beta*d: the beam lies outside visible space.
class BeamInvisibleError : public Error {
public:
    using Error::Error;
};

class DegeneratePatternError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, const std::string& source = {})
        : Error(compose(msg, line, source)), message_(msg), line_(line) {}

    int line() const noexcept { return line_; }
    const std::string& message() const noexcept { return message_; }

private:
    static std::string compose(const std::string& msg, int line, const std::string& source)
    {
        std::string out = source.empty() ? std::string{} : source + ": ";
        if (line > 0)
            out += "line " + std::to_string(line) + ": ";
        return out + msg;
    }

    std::string message_;
    int line_;
};

class OrderingError : public Error {
public:
    using Error::Error;
};

class ConsistencyError : public Error {
public:
    using Error::Error;
};

} // namespace butler
