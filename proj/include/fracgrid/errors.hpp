#pragma once

#include <stdexcept>
#include <string>

namespace fracgrid {

/// Invalid parameter or malformed configuration. `key()` names the offending
/// setting when one is known.
class ConfigError : public std::invalid_argument {
public:
  explicit ConfigError(const std::string& what, std::string key = {})
      : std::invalid_argument(what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

private:
  std::string key_;
};

/// Requested storage exceeds the configured budget, or a container is full.
class ResourceError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The explicit scheme produced a non-finite value.
class DivergenceError : public std::runtime_error {
public:
  DivergenceError(const std::string& what, long step, double max_abs)
      : std::runtime_error(what), step_(step), max_abs_(max_abs) {}

  long step() const noexcept { return step_; }
  double max_abs() const noexcept { return max_abs_; }

private:
  long step_;
  double max_abs_;
};

/// File could not be opened or written.
class IoError : public std::runtime_error {
public:
  IoError(const std::string& what, std::string path)
      : std::runtime_error(what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

private:
  std::string path_;
};

}  // namespace fracgrid
