#ifndef MULTIPROJ_ERRORS_HPP
#define MULTIPROJ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace multiproj {

/// Invalid numeric input (non-finite values, negative radius).
class ValueError : public std::invalid_argument {
 public:
  explicit ValueError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Tensor order or dimension mismatch.
class ShapeError : public std::invalid_argument {
 public:
  explicit ShapeError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Bad configuration: unknown algorithm tag, malformed norm spec, bad flags.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// File read/write failure or malformed tensor file.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Training diverged (non-finite loss).
class TrainingError : public std::runtime_error {
 public:
  TrainingError(const std::string& msg, std::size_t step)
      : std::runtime_error(msg), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

}  // namespace multiproj

#endif
