#pragma once

#include <stdexcept>
#include <string>

namespace steklov {

// Process exit codes shared by the CLI and the error hierarchy below.
constexpr int kExitSuccess = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitResourceLimit = 3;
constexpr int kExitInvariantViolation = 4;

/// Malformed or out-of-contract caller input. Maps to exit code 2.
class InvalidInput : public std::runtime_error {
public:
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

/// A configured size or iteration cap was exceeded. Maps to exit code 3.
class ResourceLimit : public std::runtime_error {
public:
    explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

/// An internal postcondition failed; always a bug, never a user error.
/// Maps to exit code 4.
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

/// The graph is not connected where a connected graph is required.
class DisconnectedInput : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// An operation needing host-group labels was given a graph without them.
class MissingHostLabels : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// sigma_1 was requested for a graph with fewer than two boundary vertices.
class SigmaOneUndefined : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// A Rayleigh quotient was requested for a vector vanishing on the boundary.
class ZeroBoundaryNorm : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

} // namespace steklov
