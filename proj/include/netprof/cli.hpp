#pragma once
// Command-line front end. Lives in the library so tests can drive it
// in-process. Exit codes: 0 success, 1 analysis-stage degradation
// (partial report), 2 usage or load error.

#include <iosfwd>
#include <string>
#include <vector>

namespace netprof::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace netprof::cli
