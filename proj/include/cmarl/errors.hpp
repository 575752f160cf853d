#pragma once

#include <stdexcept>
#include <string>

namespace cmarl {

// Exit code 2 family: the experiment cannot start.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidConfig : ConfigError {
  using ConfigError::ConfigError;
};

struct IntractableJointSpace : ConfigError {
  using ConfigError::ConfigError;
};

// Exit code 3 family: inputs on disk are unusable.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InconsistentTraces : DataError {
  using DataError::DataError;
};

struct DegenerateTarget : DataError {
  using DataError::DataError;
};

struct NoPositiveRewardSteps : DataError {
  using DataError::DataError;
};

struct SnapshotMismatch : DataError {
  using DataError::DataError;
};

struct SchemaVersionMismatch : DataError {
  using DataError::DataError;
};

// API misuse, not recoverable by configuration.
struct SteppedAfterDone : std::logic_error {
  using std::logic_error::logic_error;
};

struct LengthMismatch : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace cmarl
