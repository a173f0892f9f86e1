#pragma once

#include <stdexcept>
#include <string>

namespace eemrio {

/// Base class for all engine errors. Catch this at the CLI boundary.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or inconsistent input data (bad CSV, duplicate codes, negative flows).
class DataError : public Error {
public:
    using Error::Error;
};

/// Numeric failure (non-productive matrix, diverging series, non-positive revenue).
class NumericError : public Error {
public:
    using Error::Error;
};

/// Mismatched taxonomies or dimensions between operands.
class IndexMismatch : public Error {
public:
    using Error::Error;
};

}  // namespace eemrio
