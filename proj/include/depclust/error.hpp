#pragma once

#include <stdexcept>
#include <string>

namespace depclust {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or non-finite input data, bad shapes, out-of-range indices.
class InputError : public Error {
public:
    using Error::Error;
};

/// A column without variation (one-point distribution).
class DegenerateColumnError : public Error {
public:
    using Error::Error;
};

/// The response handed to the rank statistic is constant, so its
/// normalising denominator vanishes.
class DegenerateResponseError : public Error {
public:
    using Error::Error;
};

/// Invalid aggregator, scenario, backend or other user-facing specification.
class SpecError : public Error {
public:
    using Error::Error;
};

/// A request whose cost would exceed a configured enumeration limit.
class ResourceError : public Error {
public:
    using Error::Error;
};

}  // namespace depclust
