#pragma once

#include <stdexcept>
#include <string>

namespace eres {

// Process exit codes double as C API status codes.
enum class ErrorCode : int {
  Ok = 0,
  Failure = 1,
  Config = 2,
  NoWell = 3,
  NoBracket = 4,
  Numerical = 5,
  BeyondOneInstanton = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(ErrorCode::Config, w) {}
};

struct NoWellError : Error {
  explicit NoWellError(const std::string& w) : Error(ErrorCode::NoWell, w) {}
};

struct NoBracketError : Error {
  explicit NoBracketError(const std::string& w) : Error(ErrorCode::NoBracket, w) {}
};

// Overflow of the continued potential (cosh argument beyond the guard).
struct RangeError : Error {
  explicit RangeError(const std::string& w) : Error(ErrorCode::Numerical, w) {}
};

// Endpoint zero of E - v of order >= 2: the square-root substitution no
// longer regularizes the integrand.
struct SingularityOrderError : Error {
  explicit SingularityOrderError(const std::string& w) : Error(ErrorCode::Numerical, w) {}
};

struct EventMissError : Error {
  explicit EventMissError(const std::string& w) : Error(ErrorCode::Numerical, w) {}
};

struct EnergyDriftError : Error {
  explicit EnergyDriftError(const std::string& w) : Error(ErrorCode::Numerical, w) {}
};

struct QuadratureError : Error {
  explicit QuadratureError(const std::string& w) : Error(ErrorCode::Numerical, w) {}
};

struct BeyondOneInstantonError : Error {
  explicit BeyondOneInstantonError(const std::string& w)
      : Error(ErrorCode::BeyondOneInstanton, w) {}
};

}  // namespace eres
