#pragma once

#include <stdexcept>
#include <string>

namespace pmine {

// Malformed or invalid input data: bad files, failed validation, schema
// mismatches. The CLI maps these to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A request that exceeds a hard resource limit (e.g. an oversized
// similarity matrix).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Writing to an output sink failed part-way through.
class SinkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pmine
