#include <iostream>

#include "adiaphase/cli/commands.hpp"

int main(int argc, char** argv) {
    return adiaphase::cli::run_cli(argc, argv, std::cout, std::cerr);
}
