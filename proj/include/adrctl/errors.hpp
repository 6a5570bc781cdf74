#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adrctl {

/// Invalid problem, grid, or experiment configuration.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Field dimensions do not match the problem they are used with.
class ShapeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The explicit scheme produced a non-finite or runaway value.
class BlowUpError : public std::runtime_error {
public:
  BlowUpError(const std::string& what, std::size_t step)
      : std::runtime_error(what + " (step " + std::to_string(step) + ")"),
        step_(step) {}

  std::size_t step() const noexcept { return step_; }

private:
  std::size_t step_;
};

/// CG found a search direction with <Hw, w> <= 0.
class NotPositiveDefiniteError : public std::runtime_error {
public:
  NotPositiveDefiniteError(const std::string& what, std::size_t iteration)
      : std::runtime_error(what + " (iteration " + std::to_string(iteration) + ")"),
        iteration_(iteration) {}

  std::size_t iteration() const noexcept { return iteration_; }

private:
  std::size_t iteration_;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace adrctl
