#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace swarmcheck {

enum class ErrorKind {
  DegenerateDistance,
  NotEnoughAgents,
  DimensionMismatch,
  BadDelta,
  NumericBlowup,
  InsufficientData,
  InvalidConfig,
  Io,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DegenerateDistance: return "DegenerateDistance";
    case ErrorKind::NotEnoughAgents: return "NotEnoughAgents";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::BadDelta: return "BadDelta";
    case ErrorKind::NumericBlowup: return "NumericBlowup";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI, the sweep runner) can map it to an exit code or a
/// failed cell without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), message_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace swarmcheck
