#pragma once

#include <string>
#include <vector>

namespace hmt::cli {

/// Entry point shared by the binary and the tests. args excludes argv[0].
/// Exit codes: 0 success, 1 configuration/validation error, 2 divergence flag.
int run(const std::vector<std::string>& args);

} // namespace hmt::cli
