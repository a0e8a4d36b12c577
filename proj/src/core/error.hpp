#pragma once

#include <stdexcept>
#include <string>

namespace seglab {

// Failure categories; the C API and the CLI exit codes map onto these.
enum class ErrorKind {
    invalid_argument,
    invariant_violation,
    convergence_failure,
    io_failure
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
    throw Error(kind, msg);
}

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
    if (!cond) fail(kind, msg);
}

} // namespace seglab
