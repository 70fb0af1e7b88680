#include "fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace weave::testing {

std::filesystem::path fixture_path(const std::string& relative) {
  return std::filesystem::path(WEAVE_FIXTURE_DIR) / relative;
}

std::filesystem::path library_path(const std::string& relative) {
  return std::filesystem::path(WEAVE_LIBRARY_DIR) / relative;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace weave::testing
