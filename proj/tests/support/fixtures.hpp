#pragma once

#include <filesystem>
#include <string>

namespace weave::testing {

std::filesystem::path fixture_path(const std::string& relative);
std::filesystem::path library_path(const std::string& relative);
std::string read_text(const std::filesystem::path& path);

}  // namespace weave::testing
