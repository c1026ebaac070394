#pragma once

#include <stdexcept>
#include <string>

namespace regge {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text or files (CLI exit code 2).
struct ParseError : Error {
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

// Structurally broken triangulation data.
struct StructureError : Error {
    using Error::Error;
};

// Valid input outside the mathematical domain of an operation (CLI exit code 3).
struct DomainError : Error {
    using Error::Error;
};

// No negative-action level exists at this volume.
struct SmallVolumeError : DomainError {
    using DomainError::DomainError;
};

// Pachner move site does not match the triangulation revision.
struct InvalidMoveError : DomainError {
    using DomainError::DomainError;
};

}  // namespace regge
