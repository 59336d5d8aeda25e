#include <iostream>

#include "blowup/cli.hpp"

int main(int argc, char** argv) { return blowup::cli::main(argc, argv, std::cout, std::cerr); }
