#pragma once

#include <stdexcept>
#include <string>

namespace ppmsync {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates an operation's precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A construction recipe cannot produce a valid object for the given parameters
/// (e.g. marker sets collide after reduction mod n).
class ConstructionInapplicable : public Error {
public:
    using Error::Error;
};

/// An object failed a structural or combinatorial check.
class ValidationFailure : public Error {
public:
    using Error::Error;
};

/// A catalog lookup matched no entry (or more than one).
class NotFound : public Error {
public:
    using Error::Error;
};

/// An exhaustive search proved that no object with the requested properties exists.
class Infeasible : public Error {
public:
    using Error::Error;
};

/// A bounded computation ran past its configured work limit.
class WorkLimitExceeded : public Error {
public:
    using Error::Error;
};

/// Should be unreachable for valid input; indicates a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace ppmsync
