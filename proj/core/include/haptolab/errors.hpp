#pragma once

#include <stdexcept>
#include <string>

namespace haptolab {

// Root of every exception thrown by the library. The CLI maps subclasses to
// exit codes (see tools/haptolab_cli.cpp).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A documented precondition was violated by the caller.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class OutOfDomain : public Error {
public:
    using Error::Error;
};

// Iterative solve (CG, Newton) did not reach tolerance.
class SolverFailure : public Error {
public:
    using Error::Error;
};

// A state left its admissible range; the usual remedy is a smaller dt.
class StabilityViolation : public Error {
public:
    using Error::Error;
};

class CflViolation : public Error {
public:
    using Error::Error;
};

class ConstantsInfeasible : public Error {
public:
    using Error::Error;
};

class InvalidInitialData : public Error {
public:
    using Error::Error;
};

class InvalidCurve : public Error {
public:
    using Error::Error;
};

class DegenerateLevelSet : public Error {
public:
    using Error::Error;
};

class WallMarginViolation : public Error {
public:
    using Error::Error;
};

class MissingSnapshot : public Error {
public:
    using Error::Error;
};

// Configuration could not be parsed or failed validation.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Throws InvalidArgument with `what` when `ok` is false.
void require(bool ok, const std::string& what);

}  // namespace haptolab
