#pragma once

#include <stdexcept>
#include <string>

namespace cuspcal {

/// Error categories. The CLI maps them onto exit codes.
enum class ErrorKind {
  Precondition,  // invalid argument to a library operation
  Schema,        // malformed or inconsistent JSON input (exit 2)
  Budget,        // a size limit would be exceeded (exit 3)
  Assertion,     // a mathematical check failed (exit 4)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(const std::string& what) { throw Error(ErrorKind::Precondition, what); }
[[noreturn]] inline void fail_budget(const std::string& what) { throw Error(ErrorKind::Budget, what); }
[[noreturn]] inline void fail_assert(const std::string& what) { throw Error(ErrorKind::Assertion, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(what);
}

}  // namespace cuspcal
