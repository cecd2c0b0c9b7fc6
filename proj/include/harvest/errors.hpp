#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace harvest {

// Exit codes surfaced by the command line front end.
enum class ErrorCode : int { ok = 0, config = 2, regime = 3, accuracy = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }
  const char* code_name() const;

 private:
  ErrorCode code_;
};

// Bad input: pole of gamma, wrong branch, unsupported dimension.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::config, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorCode::config, what) {}
};

// Coupling too strong for the leading-order density matrix.
class RegimeError : public Error {
 public:
  explicit RegimeError(const std::string& what) : Error(ErrorCode::regime, what) {}
};

// Numerical method could not meet its tolerance. Carries the best estimate.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, std::complex<double> best = {},
                double err = 0.0)
      : Error(ErrorCode::accuracy, what), best_(best), err_(err) {}
  std::complex<double> best_estimate() const { return best_; }
  double error_estimate() const { return err_; }

 private:
  std::complex<double> best_;
  double err_;
};

// Overflow of an intermediate quantity.
class RangeError : public Error {
 public:
  explicit RangeError(const std::string& what) : Error(ErrorCode::accuracy, what) {}
};

inline const char* Error::code_name() const {
  switch (code_) {
    case ErrorCode::ok: return "ok";
    case ErrorCode::config: return "config";
    case ErrorCode::regime: return "regime";
    case ErrorCode::accuracy: return "accuracy";
  }
  return "unknown";
}

}  // namespace harvest
