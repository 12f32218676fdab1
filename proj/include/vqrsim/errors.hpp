#pragma once

#include <stdexcept>
#include <string>

namespace vqrsim {

// Base class for all engine errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input (CSV rows, JSON documents). Messages carry file and line
// context where available.
class ParseError : public Error {
public:
    using Error::Error;
};

// Unknown or duplicate identifiers: references that do not resolve.
class ReferentialError : public Error {
public:
    using Error::Error;
};

// Values outside their documented domain (ranges, invariants, preconditions).
class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace vqrsim
