#include "depclust/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return depclust::run_cli(args, std::cout, std::cerr);
}
