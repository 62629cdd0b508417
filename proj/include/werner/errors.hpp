// Exception hierarchy shared by all modules.
#pragma once

#include <stdexcept>
#include <string>

namespace werner {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct NotHermitian : Error {
    using Error::Error;
};

struct NoConvergence : Error {
    using Error::Error;
};

struct NotUnitary : Error {
    using Error::Error;
};

struct SingularLambda : Error {
    using Error::Error;
};

struct UnsupportedCopies : Error {
    using Error::Error;
};

struct DimensionTooLarge : Error {
    using Error::Error;
};

struct IndexError : Error {
    using Error::Error;
};

struct DecompositionMismatch : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace werner
