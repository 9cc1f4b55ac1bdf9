#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace meander {

// Full command-line surface; returns the process exit code. Streams are
// injected so runs are testable and byte-reproducible.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace meander
