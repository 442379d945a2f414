#include <iostream>

#include "maser/cli/commands.hpp"

int main(int argc, char** argv) {
    return maser::cli::run_cli(argc, argv, std::cout, std::cerr);
}
