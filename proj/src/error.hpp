#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace chaoscrypt {

enum class ErrorCode {
    ContractViolation = 1,
    Divergence,
    Parse,
    Length,
    KeyRejected,
    Io,
    Format,
    NotApplicable,
};

const char* to_string(ErrorCode code) noexcept;

// Base of every exception the core throws; the C API maps `code()` onto its
// status values.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// An orbit left the bounded region (or became non-finite) at `step()`.
class DivergenceError : public Error {
public:
    DivergenceError(std::uint64_t step, const std::string& what)
        : Error(ErrorCode::Divergence, what + " (step " + std::to_string(step) + ")"), step_(step) {}
    std::uint64_t step() const noexcept { return step_; }

private:
    std::uint64_t step_;
};

[[noreturn]] inline void contract_violation(const std::string& what) {
    throw Error(ErrorCode::ContractViolation, what);
}

inline void require(bool condition, const char* what) {
    if (!condition) contract_violation(what);
}

}  // namespace chaoscrypt
