#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sparsecode {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class InvalidPartition : public Error {
public:
    using Error::Error;
};

/// Straggler count outside the supported regime (s > n - s).
class UnsupportedRegime : public Error {
public:
    using Error::Error;
};

class InfeasibleSplit : public Error {
public:
    using Error::Error;
};

class InvalidMatrix : public Error {
public:
    using Error::Error;
};

class InvalidPlan : public Error {
public:
    using Error::Error;
};

class ProfileError : public Error {
public:
    using Error::Error;
};

/// Raised when an exhaustive enumeration would exceed the configured cap.
class ModeError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, long line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    long line() const noexcept { return line_; }

private:
    long line_;
};

/// The decoding system for `subset` is singular at the configured tolerance.
class DecodeFailure : public Error {
public:
    DecodeFailure(const std::string& what, std::vector<int> subset)
        : Error(what), subset_(std::move(subset)) {}

    const std::vector<int>& subset() const noexcept { return subset_; }

private:
    std::vector<int> subset_;
};

}  // namespace sparsecode
