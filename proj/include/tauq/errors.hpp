#pragma once

#include <stdexcept>
#include <string>

namespace tauq {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or invalid .bq input. Line/column are 1-based; 0 when the
/// problem is not tied to a position (e.g. a disconnected quiver).
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line = 0, int column = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg
                         : msg),
          line_(line),
          column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// The relations do not generate an admissible ideal within the bound, or
/// admissibility could not be certified.
class AdmissibilityError : public Error {
public:
    using Error::Error;
};

/// An enumeration would exceed its configured candidate budget.
class BudgetError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its precondition; the message names the
/// failing check.
class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace tauq
