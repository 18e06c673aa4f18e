#include <iostream>

#include "polycat/cli.hpp"

int main(int argc, char** argv) { return polycat::cli::run(argc, argv, std::cout, std::cerr); }
