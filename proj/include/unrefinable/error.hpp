#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace unrefinable {

enum class ErrorKind {
    DuplicatePart,
    NonPositivePart,
    EmptyPartition,
    DomainError,
    NotTriangularSum,
    IsComplete,
    NotMaximal,
    NotUnrefinable,
    InvalidMissingSet,
    NotInDomain,
    ReconstructionFailure,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::DuplicatePart: return "DuplicatePart";
    case ErrorKind::NonPositivePart: return "NonPositivePart";
    case ErrorKind::EmptyPartition: return "EmptyPartition";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NotTriangularSum: return "NotTriangularSum";
    case ErrorKind::IsComplete: return "IsComplete";
    case ErrorKind::NotMaximal: return "NotMaximal";
    case ErrorKind::NotUnrefinable: return "NotUnrefinable";
    case ErrorKind::InvalidMissingSet: return "InvalidMissingSet";
    case ErrorKind::NotInDomain: return "NotInDomain";
    case ErrorKind::ReconstructionFailure: return "ReconstructionFailure";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (and tests) can dispatch without parsing messages.
class PartitionError : public std::runtime_error {
public:
    PartitionError(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what)
        , kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace unrefinable
