#pragma once

#include <stdexcept>
#include <string>

namespace sirus {

// Malformed or degenerate input data. The CLI maps this to exit code 3,
// everything else unexpected to 4.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sirus
