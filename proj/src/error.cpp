#include "crs/error.hpp"

namespace crs {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::io: return "io_error";
        case ErrorCode::malformed: return "malformed_record";
        case ErrorCode::duplicate_id: return "duplicate_id";
        case ErrorCode::alias_collision: return "alias_collision";
        case ErrorCode::empty_input: return "empty_input";
        case ErrorCode::too_large: return "too_large";
        case ErrorCode::invalid_argument: return "invalid_argument";
        case ErrorCode::not_found: return "not_found";
        case ErrorCode::precondition: return "precondition_failed";
        case ErrorCode::unsupported_version: return "unsupported_version";
        case ErrorCode::checksum: return "checksum_mismatch";
    }
    return "error";
}

}  // namespace crs
