#include <iostream>

#include "frechet/cli.hpp"

int main(int argc, char** argv) { return frechet::run_cli(argc, argv, std::cout, std::cerr); }
