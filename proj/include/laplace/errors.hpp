#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace laplace {

/// Raised when an operation's precondition on its arguments does not hold.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Syntax or semantic error in textual input, with a 1-based position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column, std::size_t offset)
        : std::runtime_error(message + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          line_(line), column_(column), offset_(offset) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    /// 0-based byte offset into the source text.
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::size_t offset_;
};

} // namespace laplace
