// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef ESDD_ERROR_HPP
#define ESDD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace esdd {

// Bad configuration or bad command usage. CLI maps this to exit code 1.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad or missing data (files, manifests, scores). CLI maps this to exit code 2.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace esdd

#endif  // ESDD_ERROR_HPP
