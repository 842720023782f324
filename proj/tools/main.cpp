#include <iostream>
#include <string>
#include <vector>

#include "minrank/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return minrank::cli::run(args, std::cout, std::cerr);
}
