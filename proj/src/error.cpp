#include "wecg/error.hpp"

namespace wecg {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::parse_error: return "parse error";
    case ErrorCode::short_read: return "short read";
    case ErrorCode::io_error: return "i/o error";
    case ErrorCode::bad_magic: return "bad magic";
    case ErrorCode::version_mismatch: return "version mismatch";
    case ErrorCode::inflate_failure: return "inflate failure";
    case ErrorCode::corrupt_archive: return "corrupt archive";
    case ErrorCode::unrepresentable: return "unrepresentable value";
  }
  return "unknown error";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace wecg
