#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace doctrina {

enum class ErrorCode {
  domain_mismatch,
  fragment_incomplete,
  broken_product,
  structure_missing,
  precondition,
  lookup,
  parse,
  integrity,
  validation,
  resource,
  internal,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace doctrina
