#pragma once

#include <stdexcept>
#include <string>

namespace nsinf {

// Error taxonomy mirrors the CLI exit codes:
//   ConfigError -> 2, NumericalError -> 3, BudgetError -> 4.

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace nsinf
