#ifndef HIPHOP_ERRORS_HPP
#define HIPHOP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hiphop {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidParams : Error {
    using Error::Error;
};

// ---- integrator failures ----

struct CollisionError : Error {
    double t;
    CollisionError(double t_, const std::string& msg) : Error(msg), t(t_) {}
};

struct BudgetExceeded : Error {
    using Error::Error;
};

struct StiffnessSuspected : Error {
    double t;
    StiffnessSuspected(double t_, const std::string& msg) : Error(msg), t(t_) {}
};

struct NoSignChange : Error {
    using Error::Error;
};

// ---- solver failures ----

struct SingularJacobian : Error {
    using Error::Error;
};

struct NoProgress : Error {
    using Error::Error;
};

// stage is one of "seed", "newton", "bracket", "integrator"
struct NewtonFailed : Error {
    std::string stage;
    NewtonFailed(const std::string& stage_, const std::string& msg)
        : Error(stage_ + ": " + msg), stage(stage_) {}
};

struct SeedFailure : Error {
    using Error::Error;
};

struct OutOfRegime : Error {
    using Error::Error;
};

struct Unclassifiable : Error {
    double matchError;
    Unclassifiable(double matchError_, const std::string& msg)
        : Error(msg), matchError(matchError_) {}
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace hiphop

#endif
