#pragma once

#include <stdexcept>
#include <string>

namespace ising {

// Exit-code contract shared by the CLI and the tests.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitInfeasible = 3;

/// Bad command-line usage (missing flags, inconsistent options).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data (files, domain violations of operation arguments).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Request rejected by a work guard (enumeration cap, candidate-set budget).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ising
