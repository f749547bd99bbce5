#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace effbounds::cli {

// Batch front end.  Exit codes: 0 success, 1 schema/domain errors,
// 2 fatal verification violations.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace effbounds::cli
