#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace deontic::cli {

/// Exit codes: 0 success, 1 verification failure (or exhausted search),
/// 2 usage or input error, 3 search timeout.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace deontic::cli
