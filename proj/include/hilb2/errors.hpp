#pragma once

#include <stdexcept>
#include <string>

namespace hilb2 {

enum class ErrorKind {
  RankDeficient,
  ZeroInput,
  NotFiniteIndex,
  QInSpan,
  NonPrimitiveLambda2,
  WrongClass,
  InvalidArgument,
};

/// Raised when an input violates an operation's precondition.
class MathError : public std::runtime_error {
 public:
  MathError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when an internal identity that must hold exactly does not.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void check_internal(bool ok, const char* what) {
  if (!ok) throw InternalError(what);
}

}  // namespace hilb2
