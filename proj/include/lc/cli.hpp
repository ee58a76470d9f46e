#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lc {

// Exit codes: 0 YES/success, 1 NO/invalid certificate, 2 input error,
// 3 budget or timeout, 4 solver disagreement in bench mode.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lc
