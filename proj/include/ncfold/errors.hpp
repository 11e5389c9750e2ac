#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ncfold {

/// Default cap on exhaustive enumerations (words, states).
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

/// An enumeration or computation would exceed its configured size budget.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ncfold
