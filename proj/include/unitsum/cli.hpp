#pragma once

#include <string>
#include <vector>

namespace unitsum::cli {

struct CommandResult {
    int exit_code = 0; // 0 ok, 1 input error, 2 unstable certificate
    std::string out;
    std::string err;
};

/* args excludes the program name, e.g. {"count", "--d", "2", "--k", "2"} */
CommandResult run_command(const std::vector<std::string>& args);

} // namespace unitsum::cli
