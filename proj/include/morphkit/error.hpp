#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace morphkit {

enum class ErrorKind {
    io,              // file missing, unreadable or unwritable
    decode,          // malformed UTF-8
    schema,          // input data violates a file format or enum vocabulary
    config,          // malformed configuration or command-line usage
    precondition,    // caller violated an operation's contract
    undefined,       // result mathematically undefined (e.g. constant series)
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Invalid UTF-8; carries the byte offset of the first bad sequence.
class DecodeError : public Error {
public:
    explicit DecodeError(std::size_t offset);
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Row-level schema violation in a line-oriented file (1-based line number).
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace morphkit
