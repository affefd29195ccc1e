#pragma once

#include <stdexcept>
#include <string>

namespace stabcg {

enum class ErrorKind {
  UnsupportedDegree,
  Unsupported,
  SingularMass,
  NonFiniteState,
  NonPositiveLumpedMass,
  EigenSolveFailure,
  NoStableRegion,
  NoConvergence,
  BlowUp,
  Config,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::SingularMass: return "SingularMass";
    case ErrorKind::NonFiniteState: return "NonFiniteState";
    case ErrorKind::NonPositiveLumpedMass: return "NonPositiveLumpedMass";
    case ErrorKind::EigenSolveFailure: return "EigenSolveFailure";
    case ErrorKind::NoStableRegion: return "NoStableRegion";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::BlowUp: return "BlowUp";
    case ErrorKind::Config: return "Config";
  }
  return "Unknown";
}

}  // namespace stabcg
