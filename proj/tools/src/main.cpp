#include <iostream>

#include "lll/cli.hpp"

int main(int argc, char** argv) { return lll::run_cli(argc, argv, std::cout, std::cerr); }
