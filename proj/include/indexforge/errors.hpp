#ifndef INDEXFORGE_ERRORS_HPP_INCLUDED
#define INDEXFORGE_ERRORS_HPP_INCLUDED

#include <stdexcept>
#include <string>

namespace indexforge {

/// Base class for all engine errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input (bad JSON, bad markup, invalid UTF-8). Carries a
/// human-readable location when one is known.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

/// Structurally well-formed input that violates a model invariant
/// (overlapping spans, duplicate surface forms, bad depth...).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

/// Cross-structure inconsistency detected at run time (an occurrence
/// referencing an unknown paragraph, a missing segment score...).
class IntegrityError : public Error {
public:
    explicit IntegrityError(const std::string& msg) : Error(msg) {}
};

/// Filesystem-level failure.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

} // namespace indexforge

#endif
