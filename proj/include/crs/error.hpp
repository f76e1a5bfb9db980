#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace crs {

enum class ErrorCode {
    io,
    malformed,
    duplicate_id,
    alias_collision,
    empty_input,
    too_large,
    invalid_argument,
    not_found,
    precondition,
    unsupported_version,
    checksum,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace crs
