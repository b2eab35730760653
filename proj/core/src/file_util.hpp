#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "swarmagg/errors.hpp"

namespace swarmagg::detail {

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError(path, "read failed");
  return buffer.str();
}

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  writer(out);
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

}  // namespace swarmagg::detail
