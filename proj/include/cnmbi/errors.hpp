#pragma once

#include <stdexcept>
#include <string>

namespace cnmbi {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file (CSV syntax, arity, non-numeric fields). Carries a
// 1-based row and column when known; 0 means "not applicable".
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t row = 0, std::size_t col = 0)
        : Error(format(msg, row, col)), row_(row), col_(col) {}

    std::size_t row() const { return row_; }
    std::size_t col() const { return col_; }

private:
    static std::string format(const std::string& msg, std::size_t row, std::size_t col) {
        std::string out = msg;
        if (row > 0) {
            out += " (row " + std::to_string(row);
            if (col > 0) out += ", column " + std::to_string(col);
            out += ")";
        }
        return out;
    }
    std::size_t row_;
    std::size_t col_;
};

// Data that cannot be processed at all: all points identical, too few
// points, every candidate k infeasible. CLI maps this to exit code 2.
class DegenerateDataError : public Error {
public:
    using Error::Error;
};

// Invalid caller-supplied parameters (bad range, bad enum value).
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace cnmbi
