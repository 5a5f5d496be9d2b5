#include <iostream>

#include "coxpart/cli.hpp"

int main(int argc, char** argv) { return coxpart::cli::run(argc, argv, std::cout, std::cerr, std::cin); }
