#pragma once

#include <stdexcept>
#include <string>

namespace hssl {

/// Operand shapes do not agree (matrix product, layer widths, batch rows).
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A value that must be finite was NaN or infinite.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The swing-equation integrator left the physically meaningful range.
class InstabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration, parameter file, or constraint tree.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File could not be opened, read, or written, or had a bad header.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hssl
