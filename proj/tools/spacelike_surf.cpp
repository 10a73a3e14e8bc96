#include "spacelike/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return spacelike::cli::run(argc, argv, std::cout, std::cerr); }
