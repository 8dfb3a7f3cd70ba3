#include <iostream>

#include "cliffcode/cli.hpp"

int main(int argc, char** argv) { return cliffcode::run_cli(argc, argv, std::cout, std::cerr); }
