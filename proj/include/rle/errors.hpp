#pragma once

#include <stdexcept>
#include <string>

namespace rle {

// Misuse of the library surface: bad dimensions, out-of-range parameters,
// inconsistent configuration. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Problems with user-supplied data: unreadable files, malformed lines,
// unknown ids, degenerate corpora. Also exit code 2 at the CLI.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rle
