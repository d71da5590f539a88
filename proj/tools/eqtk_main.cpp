#include "eqtk/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return eqtk::cli::main(argc, argv, std::cout, std::cerr); }
