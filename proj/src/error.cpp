#include "graybench/error.hpp"

namespace graybench {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_dimension: return "invalid dimension";
    case Errc::format: return "format error";
    case Errc::unsupported: return "unsupported";
    case Errc::truncation: return "truncated input";
    case Errc::io: return "I/O error";
    case Errc::target_failure: return "target failure";
    case Errc::configuration: return "configuration error";
    case Errc::environment: return "environment error";
    case Errc::build: return "build error";
    case Errc::alignment: return "alignment error";
    case Errc::undefined_ratio: return "undefined ratio";
    case Errc::insufficient_data: return "insufficient data";
    case Errc::argument: return "argument error";
    case Errc::schema: return "schema error";
    case Errc::ordering: return "ordering error";
  }
  return "unknown error";
}

}  // namespace graybench
