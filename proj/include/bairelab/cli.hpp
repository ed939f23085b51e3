#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bairelab::cli {

/// Runs one command line (without the program name). Writes a single JSON
/// document to `out` on success and returns 0; validation and precondition
/// failures write {"error": {...}} to `err` and return 2; anything else
/// returns 1.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace bairelab::cli
