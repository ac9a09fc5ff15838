#pragma once

#include <stdexcept>
#include <string>

namespace hsvp {

enum class Errc {
  CycleDetected,
  MultipleRoots,
  UnaryInternalNode,
  UnknownParent,
  UnknownNode,
  EmptySet,
  TooLarge,
  DimensionMismatch,
  LengthMismatch,
  EmptyBatch,
  InfeasibleBudget,
  InvalidArgument,
  ParseError,
};

const char* errc_name(Errc code) noexcept;

/// Library error carrying a machine-checkable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace hsvp
