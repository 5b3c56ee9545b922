#include <iostream>

#include "spz/cli.hpp"

int main(int argc, char** argv) { return spz::cli_main(argc, argv, std::cout, std::cerr); }
