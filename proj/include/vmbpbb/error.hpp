// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace vmbpbb {

enum class ErrorCode {
  invalid_argument,
  invalid_period,
  series_too_short,
  degenerate_separation,
  insufficient_resamples,
  degenerate_band,
  undefined_correlation,
  undefined_cutoff,
  parse,
  config,
  io,
};

/// Stable kebab-case name, used in CLI diagnostics.
const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vmbpbb
