#ifndef MZVDECOMP_ERRORS_HPP
#define MZVDECOMP_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace mzvdecomp {

// Every failure raised by the library carries a stable machine-readable kind
// ("DegreeTooHigh", "FieldMismatch", ...) next to the human message. The CLI
// copies the kind verbatim into its JSON error objects.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string &message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string &kind() const noexcept { return kind_; }

  // Internal errors signal a broken engine invariant rather than bad input.
  virtual bool internal() const noexcept { return false; }

private:
  std::string kind_;
};

class InternalError : public Error {
public:
  using Error::Error;
  bool internal() const noexcept override { return true; }
};

class SyntaxError : public Error {
public:
  SyntaxError(std::size_t position, const std::string &message)
      : Error("SyntaxError", "at position " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

[[noreturn]] inline void fail(const std::string &kind, const std::string &message) {
  throw Error(kind, message);
}

[[noreturn]] inline void fail_internal(const std::string &kind, const std::string &message) {
  throw InternalError(kind, message);
}

} // namespace mzvdecomp

#endif // MZVDECOMP_ERRORS_HPP
