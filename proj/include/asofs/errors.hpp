#pragma once

#include <stdexcept>
#include <string>

namespace asofs {

// Invalid parameters or option combinations (CLI exit code 1).
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Unreadable or malformed input data (CLI exit code 2).
class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace asofs
