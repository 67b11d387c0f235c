#include <iostream>
#include <vector>

#include "pin2homalg/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pin2::run_cli(args, std::cout, std::cerr);
}
