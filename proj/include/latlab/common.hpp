#pragma once

#include <stdexcept>
#include <string>

namespace latlab {

inline constexpr const char* kVersion = "latlab 0.1.0";

// Exit-code contract of the CLI: 2 usage, 3 numeric failure, 4 falsified
// inequality. Library code throws; the CLI maps types to codes.
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct falsified_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace latlab
