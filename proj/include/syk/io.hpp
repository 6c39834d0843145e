#pragma once

#include <filesystem>
#include <string>

namespace syk {

// Shortest round-trip decimal form (std::to_chars); keeps CSV output
// byte-stable across runs.
std::string format_double(double v);

std::string sha256_hex(const std::string& data);

void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace syk
