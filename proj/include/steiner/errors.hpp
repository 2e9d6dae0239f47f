#pragma once

#include <stdexcept>
#include <string>

namespace steiner {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An element index outside [0, |G|) or otherwise malformed input element.
class InvalidElementError : public Error {
public:
    using Error::Error;
};

/// A computation exceeded a hard size guard (|G| for Aut enumeration,
/// block count for canonical labeling).
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Malformed textual input (group notation, family/design files, catalog records).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Structurally invalid design or family input (duplicate block, wrong size, ...).
class BuildError : public Error {
public:
    using Error::Error;
};

} // namespace steiner
