#pragma once

#include <stdexcept>
#include <string>

namespace kac {

// Error taxonomy shared by every module. The C API maps each class onto a
// status code, so new error kinds need a matching entry there.

/// Invalid input data: out-of-range indices, malformed values, bad shapes.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A tuning parameter outside its admissible range (sigma <= 0, alpha >= 1, ...).
class ParamError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A file could not be parsed or does not agree with its companion file.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem failure. The message always carries the offending path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical breakdown that could not be recovered from.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace kac
