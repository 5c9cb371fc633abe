#pragma once

#include <string>

namespace stab {

// whole file as a string; throws std::runtime_error if it cannot be opened
std::string read_file(const std::string& path);

// directory of the shipped data files (repro/), overridable with STAB_DATA_DIR
std::string data_dir();

} // namespace stab
