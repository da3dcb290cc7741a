#include "error.hpp"

namespace chaoscrypt {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ContractViolation: return "contract violation";
        case ErrorCode::Divergence: return "divergence";
        case ErrorCode::Parse: return "parse error";
        case ErrorCode::Length: return "length error";
        case ErrorCode::KeyRejected: return "key rejected";
        case ErrorCode::Io: return "i/o error";
        case ErrorCode::Format: return "format error";
        case ErrorCode::NotApplicable: return "not applicable";
    }
    return "unknown error";
}

}  // namespace chaoscrypt
