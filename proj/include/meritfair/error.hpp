#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace meritfair {

enum class ErrorCode : std::uint8_t {
    Parse,
    Domain,
    DuplicateId,
    UnknownId,
    MissingCriterion,
    MissingAttribute,
    UndefinedRate,
    AmbiguousRate,
    MissingRate,
    PopulationTooLarge,
    InvalidArgument,
    Io,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. The code lets callers (and the CLI)
/// branch without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace meritfair
