#pragma once

#include <stdexcept>
#include <string>

namespace afshar {

// Every failure in the library carries one of these stable codes so callers
// and tests can match on the code instead of parsing message prose.
enum class Errc {
  invalid_bounds,
  too_few_points,
  zero_field,
  grid_too_coarse,
  slits_outside_grid,
  wire_too_thin_for_grid,
  wires_outside_grid,
  grid_mismatch,
  no_detections,
  not_normalized,
  dark_point,
  undersampled_source,
  out_of_range,
  peaks_not_found,
  parse_error,
  validation_error,
};

inline const char* code_name(Errc c) {
  switch (c) {
    case Errc::invalid_bounds: return "invalid-bounds";
    case Errc::too_few_points: return "too-few-points";
    case Errc::zero_field: return "zero-field";
    case Errc::grid_too_coarse: return "grid-too-coarse";
    case Errc::slits_outside_grid: return "slits-outside-grid";
    case Errc::wire_too_thin_for_grid: return "wire-too-thin-for-grid";
    case Errc::wires_outside_grid: return "wires-outside-grid";
    case Errc::grid_mismatch: return "grid-mismatch";
    case Errc::no_detections: return "no-detections";
    case Errc::not_normalized: return "not-normalized";
    case Errc::dark_point: return "dark-point";
    case Errc::undersampled_source: return "undersampled-source";
    case Errc::out_of_range: return "out-of-range";
    case Errc::peaks_not_found: return "peaks-not-found";
    case Errc::parse_error: return "parse-error";
    case Errc::validation_error: return "validation-error";
  }
  return "unknown";
}

class SimError : public std::runtime_error {
 public:
  SimError(Errc code, const std::string& detail)
      : std::runtime_error(std::string(code_name(code)) + ": " + detail),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& detail) {
  throw SimError(code, detail);
}

// Setup mistakes (bad config values, inconsistent geometry) map to exit
// code 1 in the CLI; everything else is a numerical failure, exit code 2.
inline bool is_setup_error(Errc c) {
  return c == Errc::parse_error || c == Errc::validation_error;
}

}  // namespace afshar
