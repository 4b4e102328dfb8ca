#pragma once

#include <stdexcept>

namespace orient {

// Input cannot be read or is not in the expected format (CLI exit code 2).
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Data is empty or degenerate after processing (CLI exit code 3).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace orient
