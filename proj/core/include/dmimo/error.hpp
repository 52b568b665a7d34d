#pragma once

#include <stdexcept>
#include <string>

namespace dmimo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid scenario, experiment or PGA configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The strong-pilot Gram matrix of a draw is numerically singular
/// (condition number above kGramConditionLimit). The draw is rejected.
class SingularGramError : public Error {
 public:
  using Error::Error;
};

/// Monte Carlo harness exhausted its redraw budget on singular draws.
class RejectionBudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace dmimo
