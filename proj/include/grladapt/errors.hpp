#ifndef GRLADAPT_ERRORS_HPP_
#define GRLADAPT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace grladapt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shape contract violated (names both shapes in the message).
struct DimensionError : Error {
  using Error::Error;
};

// Invalid configuration value (slope out of range, empty layer list, ...).
struct ConfigError : Error {
  using Error::Error;
};

// Dataset contract violated (missing labels, labels on adaptation targets,
// out-of-range class index, empty dataset, ...).
struct DataError : Error {
  using Error::Error;
};

// Object is in the wrong state for the requested operation.
struct StateError : Error {
  using Error::Error;
};

// Non-finite value where finiteness is an invariant.
struct NumericError : Error {
  using Error::Error;
};

// Malformed on-disk artifact; message carries the byte offset when known.
struct FormatError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

// A verification oracle cannot be trusted (e.g. non-deterministic loss closure).
struct OracleError : Error {
  using Error::Error;
};

}  // namespace grladapt

#endif  // GRLADAPT_ERRORS_HPP_
