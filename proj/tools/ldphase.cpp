#include <iostream>

#include "ldphase/cli.hpp"

int main(int argc, char** argv) { return ldphase::cli::run(argc, argv, std::cout, std::cerr); }
