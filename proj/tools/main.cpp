#include <iostream>

#include "treepack/cli.hpp"

int main(int argc, char** argv) { return treepack::run_cli(argc, argv, std::cout, std::cerr); }
