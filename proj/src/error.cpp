#include "morphkit/error.hpp"

namespace morphkit {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::io: return "io";
    case ErrorKind::decode: return "decode";
    case ErrorKind::schema: return "schema";
    case ErrorKind::config: return "config";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::undefined: return "undefined";
    }
    return "unknown";
}

DecodeError::DecodeError(std::size_t offset)
    : Error(ErrorKind::decode, "invalid UTF-8 at byte offset " + std::to_string(offset)),
      offset_(offset)
{
}

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error(ErrorKind::schema, "line " + std::to_string(line) + ": " + message),
      line_(line)
{
}

}  // namespace morphkit
