#pragma once

#include <stdexcept>
#include <string>

namespace gfl {

// Malformed input data (files, CLI graph descriptions, bad matrices).
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// Request is well-formed but outside what this implementation supports.
struct CapabilityError : std::runtime_error {
    explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

// Request is outside the mathematical domain of the operation.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gfl
