#pragma once

#include <stdexcept>
#include <string>

namespace fdl {

// Every library error carries a stable kind tag so callers (and the CLI)
// can dispatch without parsing messages.
enum class ErrorKind {
  NonFreeFactorWord,
  UnreducedWord,
  NotAMember,
  AlreadyMember,
  SizeCap,
  NonIntegralRatio,
  BoundedSequence,
  NotPrime,
  IllDefinedMap,
  FactorizationLimit,
  NotFoundWithinBound,
  EqualSequences,
  BadInput,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonFreeFactorWord: return "NonFreeFactorWord";
    case ErrorKind::UnreducedWord: return "UnreducedWord";
    case ErrorKind::NotAMember: return "NotAMember";
    case ErrorKind::AlreadyMember: return "AlreadyMember";
    case ErrorKind::SizeCap: return "SizeCap";
    case ErrorKind::NonIntegralRatio: return "NonIntegralRatio";
    case ErrorKind::BoundedSequence: return "BoundedSequence";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::IllDefinedMap: return "IllDefinedMap";
    case ErrorKind::FactorizationLimit: return "FactorizationLimit";
    case ErrorKind::NotFoundWithinBound: return "NotFoundWithinBound";
    case ErrorKind::EqualSequences: return "EqualSequences";
    case ErrorKind::BadInput: return "BadInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(to_string(kind)) + ": " + msg),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

}  // namespace fdl
