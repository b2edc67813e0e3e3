#ifndef COREAD_ERROR_HPP_
#define COREAD_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coread {

// Base class for all domain errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when a file or stream cannot be opened, read, or written.
// Distinct from analysis errors so the CLI can map it to its own exit
// code.
class IoError : public Error {
public:
    using Error::Error;
};

// Raised while reading external inputs (JSON Lines, CSV, Pajek files).
// Carries the 1-based line number of the offending input line.
class ParseError : public IoError {
public:
    ParseError(std::size_t line, const std::string& what)
        : IoError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace coread

#endif // COREAD_ERROR_HPP_
