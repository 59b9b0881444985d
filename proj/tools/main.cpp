#include <iostream>
#include <string>
#include <vector>

#include "unitsum/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    auto res = unitsum::cli::run_command(args);
    std::cout << res.out;
    std::cerr << res.err;
    return res.exit_code;
}
