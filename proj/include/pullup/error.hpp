#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pullup {

enum class ErrorCode {
  parse,
  index_out_of_range,
  unsupported_entry,
  degenerate_geometry,
  degenerate_direction,
  numeric_instability,
  unfoldable_with_budget,
  algorithm_divergence,
  dangling_hole,
  hole_placement_failure,
  range,
  io,
  invalid_argument,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse: return "parse-error";
    case ErrorCode::index_out_of_range: return "index-out-of-range";
    case ErrorCode::unsupported_entry: return "unsupported-entry";
    case ErrorCode::degenerate_geometry: return "degenerate-geometry";
    case ErrorCode::degenerate_direction: return "degenerate-direction";
    case ErrorCode::numeric_instability: return "numeric-instability";
    case ErrorCode::unfoldable_with_budget: return "unfoldable-with-budget";
    case ErrorCode::algorithm_divergence: return "algorithm-divergence";
    case ErrorCode::dangling_hole: return "dangling-hole";
    case ErrorCode::hole_placement_failure: return "hole-placement-failure";
    case ErrorCode::range: return "range-error";
    case ErrorCode::io: return "io-error";
    case ErrorCode::invalid_argument: return "invalid-argument";
  }
  return "unknown";
}

/// Exception carrying a machine-readable code; what() is "<code>: <message>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pullup
