#pragma once

#include <stdexcept>
#include <string>

namespace stdsa {

enum class ErrorCode {
    MissingColumn,
    DuplicateRegion,
    ParseError,
    IoError,
    UnknownRegion,
    PTooLarge,
    ZeroVariance,
    LengthMismatch,
    ConstantColumn,
    EmptyInput,
    DimensionMismatch,
    KTooLarge,
    CurveTooShort,
    DegenerateGeometry,
};

const char* to_string(ErrorCode code);

/// All recoverable failures surface as this exception. `stage` is filled in
/// by the pipeline so a caller can tell which step broke.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message),
          code_(code) {}

    Error(ErrorCode code, std::string message, std::string stage)
        : std::runtime_error("[" + stage + "] " + to_string(code) + ": " + message),
          code_(code), stage_(std::move(stage)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& stage() const noexcept { return stage_; }

private:
    ErrorCode code_;
    std::string stage_;
};

}  // namespace stdsa
