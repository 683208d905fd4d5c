#pragma once

#include <filesystem>
#include <string>

namespace cfreal::cli {

std::string read_file(const std::filesystem::path &path);

/// Writes to a sibling temporary file and renames it over the target.
void write_file_atomic(const std::filesystem::path &path, const std::string &content);

} // namespace cfreal::cli
