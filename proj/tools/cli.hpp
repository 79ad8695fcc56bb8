#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gx {

/// The gexplore command line, minus the program name. Exit codes: 0 on
/// success, 1 on a failure inside the library, 2 on bad flags or unreadable
/// input files.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gx
