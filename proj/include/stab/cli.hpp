#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stab::cli {

enum Exit : int { ok = 0, invalid_input = 2, budget_exceeded = 3, internal_error = 4 };

// runs one subcommand; args excludes the program name
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace stab::cli
