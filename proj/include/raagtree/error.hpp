#pragma once

#include <stdexcept>
#include <string>

namespace raagtree {

enum class ErrorKind {
  NotATree,
  BadLabel,
  TooSmall,
  TooLarge,
  NonzeroConstantTerm,
  BadF,
  MalformedPair,
  DivByZero,
  Parse,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::BadLabel: return "BadLabel";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorKind::BadF: return "BadF";
    case ErrorKind::MalformedPair: return "MalformedPair";
    case ErrorKind::DivByZero: return "DivByZero";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace raagtree
