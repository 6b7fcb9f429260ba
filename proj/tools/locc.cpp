#include <iostream>

#include "locc/cli.hpp"

int main(int argc, char** argv) { return locc::run_cli(argc, argv, std::cout, std::cerr); }
