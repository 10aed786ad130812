#ifndef POPRANK_ERROR_HPP_
#define POPRANK_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace poprank {

/// Raised for malformed or inconsistent input: bad schemas, unresolved
/// references in strict mode, type mismatches, parse errors. The CLI maps
/// it to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// InputError carrying the file and 1-based line of the offending record.
class ParseError : public InputError {
public:
    ParseError(std::string file, std::size_t line, const std::string &what)
        : InputError(file + ":" + std::to_string(line) + ": " + what),
          file_(std::move(file)), line_(line) {}

    const std::string &file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

} // namespace poprank

#endif // POPRANK_ERROR_HPP_
