#include <iostream>

#include "tetraproj/cli.hpp"

int main(int argc, char** argv) { return tetraproj::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
