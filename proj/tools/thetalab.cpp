#include <iostream>

#include "thetalab/cli.hpp"

int main(int argc, char** argv) { return thetalab::cli::run(argc, argv, std::cout, std::cerr); }
