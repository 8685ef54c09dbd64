#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tortoise {

enum class ErrorKind {
  Parse,
  InvalidArgument,
  InvalidPotential,
  EvaluationOverflow,
  OutOfDomain,
  TurningPointInRange,
  HypergeometricDomain,
  IntegrationFailure,
  DegenerateMatch,
  NotAsymptotic,
  NotRising,
  NotVanishing,
  OutOfDualityDomain,
  GammaPole,
  SeriesDomain,
};

/// Stable, hyphenated name used on the CLI diagnostic stream.
constexpr std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InvalidPotential: return "invalid-potential";
    case ErrorKind::EvaluationOverflow: return "evaluation-overflow";
    case ErrorKind::OutOfDomain: return "out-of-domain";
    case ErrorKind::TurningPointInRange: return "turning-point-in-range";
    case ErrorKind::HypergeometricDomain: return "hypergeometric-domain";
    case ErrorKind::IntegrationFailure: return "integration-failure";
    case ErrorKind::DegenerateMatch: return "degenerate-match";
    case ErrorKind::NotAsymptotic: return "not-asymptotic";
    case ErrorKind::NotRising: return "not-rising";
    case ErrorKind::NotVanishing: return "not-vanishing";
    case ErrorKind::OutOfDualityDomain: return "out-of-duality-domain";
    case ErrorKind::GammaPole: return "gamma-pole";
    case ErrorKind::SeriesDomain: return "series-domain";
  }
  return "unknown-error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace tortoise
