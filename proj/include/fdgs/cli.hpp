#pragma once

#include <string>
#include <vector>

namespace fdgs {

// Full command-line front end.  args excludes the program name.
// Exit code 0 = accept/success, 1 = semantic reject, 2 = usage or IO error.
int cli_main(std::vector<std::string> args);

} // namespace fdgs
