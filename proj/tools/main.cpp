#include "trunclap/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return trunclap::run_cli(argc, argv, std::cout, std::cerr); }
