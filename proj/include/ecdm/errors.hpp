// errors.hpp — exception hierarchy; everything the library throws derives from ecdm::Error.
#pragma once

#include <stdexcept>
#include <string>

namespace ecdm {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid argument or malformed input (bad dimensions, out-of-range index, parse failure).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A W statistic is zero (constant block), so the scale δ̂ and every ratio built on it
// are undefined.
class DegenerateScale : public Error {
 public:
  using Error::Error;
};

// Srivastava–Reid scale: the bias-corrected W_{i(SR)} product is ≤ 0, so δ̂_SR is undefined.
class NonpositiveScale : public Error {
 public:
  using Error::Error;
};

// Requested a diagnostic at a point where it has no value (e.g. κ̂ with T̂_n = 0).
class UndefinedDiagnostic : public Error {
 public:
  using Error::Error;
};

// Requested a population quantity whose defining moment assumptions the scenario violates.
class UnsupportedAssumption : public Error {
 public:
  using Error::Error;
};

}  // namespace ecdm
