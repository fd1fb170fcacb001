#include <iostream>

#include "tmc/cli/commands.hpp"

int main(int argc, char** argv) { return tmc::cli::run(argc, argv, std::cout, std::cerr); }
