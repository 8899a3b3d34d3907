#ifndef TMW_TOOLS_CLI_HPP_
#define TMW_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace tmw::cli {

/// Runs one `tmw` invocation. `args` excludes the program name. The JSON
/// report goes to `out`, diagnostics to `err`. Returns the process exit code:
/// 0 definitive yes/success, 1 definitive no/failed verification, 2 unknown
/// (cap exhausted), 3 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tmw::cli

#endif  // TMW_TOOLS_CLI_HPP_
