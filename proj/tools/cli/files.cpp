#include "cli/files.hpp"

#include <fstream>
#include <sstream>

#include "kwsum/error.hpp"

namespace kwsum::cli {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

std::string file_stem(const fs::path& path) {
  const std::string name = path.filename().string();
  return name.substr(0, name.find('.'));
}

std::string file_tag(const fs::path& path) {
  const std::string name = path.filename().string();
  const auto first = name.find('.');
  if (first == std::string::npos) return "";
  const auto second = name.find('.', first + 1);
  if (second == std::string::npos) return "";
  return name.substr(first + 1, second - first - 1);
}

std::vector<fs::path> list_files(const fs::path& path) {
  std::error_code ec;
  if (fs::is_regular_file(path, ec)) return {path};
  if (!fs::is_directory(path, ec)) throw Error(ErrorCode::kIo, "no such file or directory: " + path.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (!entry.is_regular_file()) continue;
    const auto name = entry.path().filename().string();
    if (name.empty() || name[0] == '.') continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace kwsum::cli
