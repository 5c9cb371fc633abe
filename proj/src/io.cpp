#include "stab/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stab {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data_dir() {
  if (const char* env = std::getenv("STAB_DATA_DIR")) return env;
  return STAB_DEFAULT_DATA_DIR;
}

} // namespace stab
