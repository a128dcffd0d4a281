#pragma once

#include <string>

namespace wpg {

// Writes via a sibling temporary file and rename, so readers never see partial output.
void write_file_atomic(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace wpg
