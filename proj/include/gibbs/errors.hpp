#pragma once

#include <stdexcept>
#include <string>

namespace gibbs {

/// An enumeration or window-size guard was exceeded. Guards are hard limits;
/// nothing falls back silently.
class GuardViolation : public std::runtime_error {
 public:
  GuardViolation(std::string guard, const std::string& detail)
      : std::runtime_error("guard '" + guard + "' violated: " + detail), guard_(std::move(guard)) {}
  const std::string& guard() const noexcept { return guard_; }

 private:
  std::string guard_;
};

/// A word does not cover the sites an evaluation depends on.
class CoverageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace gibbs
