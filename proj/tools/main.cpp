#include <iostream>

#include "givens/cli.hpp"

int main(int argc, char** argv) { return givens::run_cli(argc, argv, std::cout, std::cerr); }
