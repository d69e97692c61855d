#include <iostream>
#include <string>
#include <vector>

#include "cauchy_gof/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cauchy_gof::run_cli(args, std::cout, std::cerr);
}
