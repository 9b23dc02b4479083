#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace graybench {

enum class Errc {
  invalid_dimension,
  format,
  unsupported,
  truncation,
  io,
  target_failure,
  configuration,
  environment,
  build,
  alignment,
  undefined_ratio,
  insufficient_data,
  argument,
  schema,
  ordering,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI's exit-status mapping) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace graybench
