#pragma once

#include <string>
#include <vector>

namespace nhqc {

// exit codes: 0 success, 1 physics/runtime failure, 2 usage error
int run_cli(int argc, char** argv);
int run_cli(const std::vector<std::string>& args);

}  // namespace nhqc
