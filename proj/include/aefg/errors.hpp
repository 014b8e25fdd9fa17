// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace aefg {

// Base for every error the library raises deliberately. Contract violations
// (bad indices, out-of-range probabilities) use std::invalid_argument.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Inconsistent parameters or incompatible inputs.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Well-formed data that breaks a domain invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Binary file decoding failure. offset is the byte position where decoding
// stopped.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " (at byte offset " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Solver failure. Carries the best residuals reached so callers can report
// them.
class NumericalError : public Error {
public:
    NumericalError(const std::string& what, std::vector<double> residuals = {})
        : Error(what), residuals_(std::move(residuals)) {}

    const std::vector<double>& residuals() const noexcept { return residuals_; }

private:
    std::vector<double> residuals_;
};

} // namespace aefg
