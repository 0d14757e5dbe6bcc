#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace utm {

/// Error categories. The CLI maps them to exit codes.
enum class ErrorKind { config, domain, numerical, accuracy };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(ErrorKind::config, w) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorKind::domain, w) {}
};
struct NumericalError : Error {
  explicit NumericalError(const std::string& w) : Error(ErrorKind::numerical, w) {}
};
struct AccuracyError : Error {
  explicit AccuracyError(const std::string& w) : Error(ErrorKind::accuracy, w) {}
};

/// Process exit code for an error kind: 1 config, 2 numerical, 3 accuracy.
inline int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::config:
    case ErrorKind::domain:
      return 1;
    case ErrorKind::numerical:
      return 2;
    case ErrorKind::accuracy:
      return 3;
  }
  return 2;
}

}  // namespace utm
