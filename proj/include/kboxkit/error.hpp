#ifndef KBOXKIT_ERROR_HPP
#define KBOXKIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace kboxkit {

enum class ErrorKind {
  InvalidParameter,
  DomainError,
  PreconditionError,
  InternalInvariant,
  ParseError,
  IoError,
};

const char* to_string(ErrorKind kind);

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error invalid_parameter(const std::string& what) {
  return Error(ErrorKind::InvalidParameter, what);
}
inline Error domain_error(const std::string& what) {
  return Error(ErrorKind::DomainError, what);
}
inline Error precondition_error(const std::string& what) {
  return Error(ErrorKind::PreconditionError, what);
}
inline Error internal_error(const std::string& what) {
  return Error(ErrorKind::InternalInvariant, what);
}
inline Error parse_error(const std::string& what) {
  return Error(ErrorKind::ParseError, what);
}

}  // namespace kboxkit

#endif  // KBOXKIT_ERROR_HPP
