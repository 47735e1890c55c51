#include <iostream>
#include <string>
#include <vector>

#include "ea2hg/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ea2hg::run_cli(args, std::cout, std::cerr);
}
