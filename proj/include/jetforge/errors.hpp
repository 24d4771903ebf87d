// Error types shared across the library.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace jetforge {

// Invalid user-facing input: malformed data, mismatched rings, points off
// the variety, non-prime moduli, and similar.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A configurable resource limit was hit. Carries how much was spent and the
// limit, so callers can report partial results instead of wrong answers.
class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted(const std::string& what, std::uint64_t used, std::uint64_t limit)
      : std::runtime_error(what), used_(used), limit_(limit) {}

  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t used_;
  std::uint64_t limit_;
};

}  // namespace jetforge
