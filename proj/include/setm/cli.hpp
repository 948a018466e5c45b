#pragma once
// The setm command line.

#include <iosfwd>
#include <string>
#include <vector>

namespace setm {

enum ExitCode : int { exit_ok = 0, exit_undefined = 1, exit_usage = 2 };

// args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, char** argv);

}  // namespace setm
