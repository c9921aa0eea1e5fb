#include <iostream>

#include "wedgehull/cli.hpp"

int main(int argc, char** argv) { return wedge::run_cli(argc, argv, std::cout, std::cerr); }
