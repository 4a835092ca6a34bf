#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace interf::testing {

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Sorted list of *.circ files under data/<dir>.
inline std::vector<std::filesystem::path> corpus(const std::string& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(std::filesystem::path(INTERF_TEST_DATA_DIR) / dir))
    if (e.path().extension() == ".circ") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace interf::testing
