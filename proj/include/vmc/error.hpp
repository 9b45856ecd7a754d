#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace vmc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed model data: bad indices, non-finite coefficients, crossed bounds.
class InvalidModel : public Error {
 public:
  using Error::Error;
};

// Pivots collapsed below the pivot tolerance even after refactorization and
// anti-cycling. Usually means the instance needs rescaling.
class NumericalBreakdown : public Error {
 public:
  using Error::Error;
};

class ConflictingFix : public Error {
 public:
  using Error::Error;
};

class EmptyBucket : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class StillInfeasible : public Error {
 public:
  using Error::Error;
};

class GenerationStalled : public Error {
 public:
  using Error::Error;
};

}  // namespace vmc
