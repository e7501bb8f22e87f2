#pragma once

#include <stdexcept>
#include <string>

namespace maskbench {

/// Base class for all maskbench errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or out-of-contract input (bad file, bad flag value, bad span).
/// The CLI maps this to exit code 2.
class InputError : public Error {
 public:
  explicit InputError(const std::string& msg) : Error(msg) {}
};

/// Data that fails an integrity check (e.g. a sidecar whose digest does not
/// match the audio it claims to reverse). The CLI maps this to exit code 3.
class IntegrityError : public Error {
 public:
  explicit IntegrityError(const std::string& msg) : Error(msg) {}
};

}  // namespace maskbench
