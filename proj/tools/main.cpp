#include <iostream>

#include "drlab/cli.hpp"

int main(int argc, char** argv) { return drlab::run_cli(argc, argv, std::cout, std::cerr); }
