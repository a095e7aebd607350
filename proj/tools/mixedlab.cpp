#include <iostream>

#include "mixedlab/cli.hpp"

int main(int argc, char** argv) { return mixedlab::cli::run(argc, argv, std::cout, std::cerr); }
