#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace veremi {

// Error categories map 1:1 onto CLI exit codes (io=1, config=2, data=3).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input line; message carries source name, line number and the
// offending field.
struct ParseError : DataError {
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : DataError(source + ":" + std::to_string(line) + ": " + what),
          source(source),
          line(line) {}

    std::string source;
    std::size_t line = 0;
};

} // namespace veremi
