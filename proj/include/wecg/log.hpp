#pragma once

#include <functional>
#include <string_view>

namespace wecg::log {

using WarningHandler = std::function<void(std::string_view)>;

// Warnings go to stderr by default. Installing a handler replaces that sink;
// passing an empty handler restores the default. Returns the previous handler.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(std::string_view message);

// Restores the previous handler on destruction.
class ScopedWarningHandler {
 public:
  explicit ScopedWarningHandler(WarningHandler handler)
      : previous_(set_warning_handler(std::move(handler))) {}
  ~ScopedWarningHandler() { set_warning_handler(std::move(previous_)); }
  ScopedWarningHandler(const ScopedWarningHandler&) = delete;
  ScopedWarningHandler& operator=(const ScopedWarningHandler&) = delete;

 private:
  WarningHandler previous_;
};

}  // namespace wecg::log
