#include <iostream>
#include <string>
#include <vector>

#include "gfl/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return gfl::run_command(args, std::cout, std::cerr);
}
