#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gfl {

// Dispatches one command line (without the program name). Writes the result
// envelope, a CSV table, or a structured error to out; usage problems go to
// err. Returns 0 when the command ran and every embedded pass flag is true,
// 1 on a failing check or a domain/format error, 2 on a usage error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gfl
