#include <iostream>

#include "besov/cli.hpp"

int main(int argc, char** argv) { return besov::cli_main(argc, argv, std::cout, std::cerr); }
