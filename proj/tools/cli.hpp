#pragma once

#include <string>
#include <vector>

namespace homog::cli {

/// Dispatch the solve/series/ratemap/micro verbs.
/// Exit codes: 0 success, 2 flag errors, 3 numerical divergence, 4 I/O errors.
int run(const std::vector<std::string>& args);

int run(int argc, const char* const* argv);

}  // namespace homog::cli
