#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stablepi1 {

// Base for every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CosetLimitExceeded : public Error {
public:
    explicit CosetLimitExceeded(std::size_t limit)
        : Error("coset enumeration exceeded " + std::to_string(limit) + " live cosets"), limit_(limit) {}
    std::size_t limit() const noexcept { return limit_; }

private:
    std::size_t limit_;
};

class OrderExceedsCap : public Error {
public:
    explicit OrderExceedsCap(std::size_t cap)
        : Error("order exceeds cap " + std::to_string(cap)) {}
};

class SingularMatrix : public Error {
public:
    SingularMatrix() : Error("matrix is singular") {}
};

class InvalidParams : public Error {
public:
    using Error::Error;
};

class DisconnectedComplex : public Error {
public:
    using Error::Error;
};

class IncompatibleMap : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace stablepi1
