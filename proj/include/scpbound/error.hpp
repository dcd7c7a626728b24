#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scpbound {

/// Failure categories. The numeric values are the CLI exit codes.
enum class ErrorKind : int {
    infeasible = 1,
    bound_not_found = 2,
    input = 3,
    invalid_argument = 4,
    internal = 5,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// A row with no 1-entry: no column set can cover it.
class InfeasibleError : public Error {
public:
    explicit InfeasibleError(std::size_t row)
        : Error(ErrorKind::infeasible, "row " + std::to_string(row + 1) + " has no covering column"),
          row_(row) {}

    /// 0-based index of the first uncoverable row.
    [[nodiscard]] std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& msg)
        : Error(ErrorKind::input, "line " + std::to_string(line) + ": " + msg), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ArgumentError : public Error {
public:
    explicit ArgumentError(const std::string& msg) : Error(ErrorKind::invalid_argument, msg) {}
};

class InternalError : public Error {
public:
    explicit InternalError(const std::string& msg) : Error(ErrorKind::internal, "internal invariant violated: " + msg) {}
};

}  // namespace scpbound
