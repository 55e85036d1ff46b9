#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace textcat {

/// Reads a whole file. Throws IoFailure.
std::string read_file(const std::filesystem::path& path);

/// Writes `content` to a sibling temporary file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace textcat
