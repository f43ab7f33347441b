#pragma once

#include <stdexcept>
#include <string>

namespace thinfilm {

/// Invalid parameters, malformed configuration or violated preconditions.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// The time integration could not continue (persistent step rejection).
class NumericalAbort : public std::runtime_error {
 public:
  explicit NumericalAbort(const std::string& what) : std::runtime_error(what) {}
};

/// Reading or writing run artifacts failed.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace thinfilm
