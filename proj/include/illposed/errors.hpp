#ifndef ILLPOSED_ERRORS_HPP
#define ILLPOSED_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace illposed {

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Inconsistent or unusable configuration (grids, steps, node sets).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A region does not fit inside another (mollifier ball vs. window).
class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The requested quantity cannot be computed to the stated accuracy in
/// the available arithmetic.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The truncated kernel-spectrum integral failed its tail certificate.
class TruncationError : public InfeasibleError {
public:
    TruncationError(const std::string& what, double tail, double roundoff)
        : InfeasibleError(what), tail_estimate(tail), roundoff_estimate(roundoff)
    {
    }
    double tail_estimate;
    double roundoff_estimate;
};

/// Malformed input file.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& file, std::size_t line, const std::string& field, const std::string& why)
        : std::runtime_error(file + ":" + std::to_string(line) + ": field '" + field + "': " + why),
          line_number(line), field_name(field)
    {
    }
    std::size_t line_number;
    std::string field_name;
};

} // namespace illposed

#endif // ILLPOSED_ERRORS_HPP
