#include <iostream>

#include "dcflow/cli.hpp"

int main(int argc, char** argv) { return dcflow::cli::run_cli(argc, argv, std::cout, std::cerr); }
