#include <iostream>

#include "erg/cli.hpp"

int main(int argc, char** argv) { return erg::run_cli(argc, argv, std::cout, std::cerr); }
