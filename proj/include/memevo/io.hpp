#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace memevo {

/// Writes `content` to `path` through a sibling temporary file and a rename, so readers
/// never observe a half-written file. Throws std::runtime_error on I/O failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace memevo
