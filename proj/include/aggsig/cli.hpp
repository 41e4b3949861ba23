#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aggsig {

// Entry point of the `aggsig` tool. `args` excludes the program name. Usage
// and error text go to `err`, progress/summary lines to `out`.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aggsig
