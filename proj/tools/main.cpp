#include "algstoch/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return algstoch::cli::run(argc, argv, std::cout, std::cerr); }
