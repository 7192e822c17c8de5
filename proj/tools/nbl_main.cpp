#include <iostream>

#include "nbl/cli.hpp"

int main(int argc, char** argv) { return nbl::cli::run(argc, argv, std::cout, std::cerr); }
