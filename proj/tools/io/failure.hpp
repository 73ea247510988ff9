// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace vmbpbb::io {

enum class FailureKind { parse, config, io };

/// Errors raised by the CLI's file and argument handling.
class Failure : public std::runtime_error {
 public:
  Failure(FailureKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  FailureKind kind() const noexcept { return kind_; }
  const char* category() const noexcept {
    switch (kind_) {
      case FailureKind::parse: return "parse";
      case FailureKind::config: return "config";
      case FailureKind::io: return "io";
    }
    return "unknown";
  }

 private:
  FailureKind kind_;
};

}  // namespace vmbpbb::io
