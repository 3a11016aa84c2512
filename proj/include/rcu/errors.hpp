#pragma once

#include <stdexcept>
#include <string>

namespace rcu {

// Error categories map one-to-one onto CLI exit codes.
enum class ErrorKind {
  input = 2,        // malformed or out-of-range input
  unsupported = 3,  // channel class not handled (singular pair)
  numeric = 4,      // bracket failure, non-convergence, oversized instance
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorKind::input, what) {}
};

class SingularChannelError : public Error {
 public:
  explicit SingularChannelError(const std::string& what)
      : Error(ErrorKind::unsupported, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(ErrorKind::numeric, what) {}
};

}  // namespace rcu
