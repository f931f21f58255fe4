#pragma once

#include <stdexcept>
#include <string>

namespace scmmi {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Level count is even or below three.
class InvalidLevelCount : public Error {
public:
    using Error::Error;
};

/// Commanded output level lies outside the sub-module's range.
class InvalidLevel : public Error {
public:
    using Error::Error;
};

/// Switch vector does not decode to a legal connection state.
class InvalidState : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent configuration. `line` is 0 when not file-backed.
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Network matrix cannot be factorized (floating island or degenerate stamp).
class SingularNetwork : public Error {
public:
    using Error::Error;
};

/// Transient stepping failed; carries the simulated time of the failure.
class SolverError : public Error {
public:
    SolverError(const std::string& what, double time)
        : Error(what + " (t = " + std::to_string(time) + " s)"), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

class InvalidPerturbation : public Error {
public:
    using Error::Error;
};

/// Post-processing failure: bad window, undefined ratio, no settling, bad CSV.
class AnalysisError : public Error {
public:
    using Error::Error;
};

}  // namespace scmmi
