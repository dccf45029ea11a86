#pragma once

#include <stdexcept>
#include <string>

namespace scrub {

// Error taxonomy shared by the library and the CLI. Each kind maps to a
// process exit code so failures are scriptable.
enum class ErrorKind {
    Input,          // unreadable file, malformed CSV
    Schema,         // named column missing, header problems
    Config,         // out-of-range or inconsistent settings
    DegenerateData, // pipeline left with too little data to proceed
    Internal        // broken invariant, contract violation
};

constexpr int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Input:
    case ErrorKind::Schema: return 2;
    case ErrorKind::Config: return 3;
    case ErrorKind::DegenerateData: return 4;
    case ErrorKind::Internal: return 5;
    }
    return 5;
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }
    int exit_code() const { return scrub::exit_code(kind_); }

private:
    ErrorKind kind_;
};

inline Error input_error(const std::string& msg) { return Error(ErrorKind::Input, msg); }
inline Error schema_error(const std::string& msg) { return Error(ErrorKind::Schema, msg); }
inline Error config_error(const std::string& msg) { return Error(ErrorKind::Config, msg); }
inline Error degenerate_data_error(const std::string& msg) { return Error(ErrorKind::DegenerateData, msg); }
inline Error internal_error(const std::string& msg) { return Error(ErrorKind::Internal, msg); }

} // namespace scrub
