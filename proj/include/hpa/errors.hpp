#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hpa {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed quiver document. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// The quiver has an oriented cycle; carries the arrow labels along it.
class CycleError : public Error {
public:
    explicit CycleError(std::vector<std::string> cycle)
        : Error(describe(cycle)), cycle_(std::move(cycle)) {}

    const std::vector<std::string>& cycle() const noexcept { return cycle_; }

private:
    static std::string describe(const std::vector<std::string>& cycle) {
        std::string s = "quiver has an oriented cycle:";
        for (const auto& a : cycle) s += " " + a;
        return s;
    }
    std::vector<std::string> cycle_;
};

class NotSubpathError : public Error {
public:
    using Error::Error;
};

/// An operation was called on input that violates its precondition
/// (invalid HPA, ungraded algebra, non-internal matching, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace hpa
