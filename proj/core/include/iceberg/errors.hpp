#pragma once

#include <stdexcept>
#include <string>

namespace iceberg {

/// Base class for everything the engine throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input data or a violated operation precondition. Maps to exit code 1.
class InputError : public Error {
public:
    using Error::Error;
};

/// Invariant broken inside the engine itself. Maps to exit code 2.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace iceberg
