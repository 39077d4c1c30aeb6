#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ersl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// parameter constraint violations; message names the violated inequality
struct ValidationError : Error {
  using Error::Error;
};

// malformed config documents; message carries a JSON pointer to the bad key
struct ConfigError : Error {
  using Error::Error;
};

struct MemoryBudgetError : Error {
  using Error::Error;
};

struct SolverError : Error {
  SolverError(const std::string& msg, std::int64_t iters, double res)
      : Error(msg), iterations(iters), residual(res) {}
  std::int64_t iterations = 0;
  double residual = 0.0;
};

}  // namespace ersl
