#pragma once

#include <stdexcept>
#include <string>

namespace cooc {

/// Error category, used by callers that need to distinguish bad input data
/// from bad configuration or an undefined metric.
enum class ErrorKind {
    Parse,         // malformed input text (carries a line number in the message)
    Validation,    // well-formed input violating a domain invariant
    Config,        // bad option or missing referenced resource
    Input,         // bad argument to an operation (unknown node, x == y, ...)
    Sizing,        // split cannot be satisfied with the available edges/non-edges
    UndefinedMetric, // metric has no value for this clustering (e.g. single cluster)
    Io,            // file could not be read/written
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace cooc
