#include "fracstep/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return fracstep::cli::run(argc, argv, std::cout, std::cerr); }
