#include <iostream>

#include "apexforge/cli.hpp"

int main(int argc, char** argv) { return apexforge::cli::run(argc, argv, std::cout, std::cerr); }
