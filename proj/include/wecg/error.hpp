#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wecg {

enum class ErrorCode {
  invalid_argument,
  parse_error,
  short_read,
  io_error,
  bad_magic,
  version_mismatch,
  inflate_failure,
  corrupt_archive,
  unrepresentable,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported through this type; `code()` lets callers
// (notably the CLI) map failures onto exit codes without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace wecg
