#include <iostream>
#include <string>
#include <vector>

#include "ppsm/figures/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ppsm::figures::run_cli(args, std::cout, std::cerr);
}
