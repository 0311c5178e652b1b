#pragma once

#include <stdexcept>
#include <string>

namespace netbatch {

enum class ErrorKind {
    Parse,
    Validation,
    Index,
    Generation,
    Model,
    Config,
    Io,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library; the kind drives C API status codes
// and CLI exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace netbatch
