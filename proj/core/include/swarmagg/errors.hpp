#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>

namespace swarmagg {

/// Invalid model parameters or experiment configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input outside an operation's mathematical domain (non-finite vector, too few grid points).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A synchronous update produced a non-finite coordinate.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(std::size_t step, std::size_t agent)
      : std::runtime_error("non-finite position at step " + std::to_string(step) + ", agent " +
                           std::to_string(agent)),
        step_(step),
        agent_(agent) {}

  std::size_t step() const noexcept { return step_; }
  std::size_t agent() const noexcept { return agent_; }

 private:
  std::size_t step_;
  std::size_t agent_;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::filesystem::path& path, const std::string& what)
      : std::runtime_error(path.string() + ": " + what), path_(path) {}

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace swarmagg
