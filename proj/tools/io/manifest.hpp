// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace vmbpbb::io {

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Run manifest: tool version, command, resolved configuration, master seed,
/// UTC timestamps and a digest of every input file.
nlohmann::json make_manifest(const std::string& command, const nlohmann::json& config,
                             const std::vector<std::filesystem::path>& inputs,
                             const std::string& started_at);

std::string utc_timestamp();

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace vmbpbb::io
