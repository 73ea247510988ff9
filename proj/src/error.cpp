// SPDX-License-Identifier: Apache-2.0
#include "vmbpbb/error.hpp"

namespace vmbpbb {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::invalid_period: return "invalid-period";
    case ErrorCode::series_too_short: return "series-too-short";
    case ErrorCode::degenerate_separation: return "degenerate-separation";
    case ErrorCode::insufficient_resamples: return "insufficient-resamples";
    case ErrorCode::degenerate_band: return "degenerate-band";
    case ErrorCode::undefined_correlation: return "undefined-correlation";
    case ErrorCode::undefined_cutoff: return "undefined-cutoff";
    case ErrorCode::parse: return "parse";
    case ErrorCode::config: return "config";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

}  // namespace vmbpbb
