#include <iostream>

#include "tatirp/cli.hpp"

int main(int argc, char** argv) { return tatirp::cli::run(argc, argv, std::cout, std::cerr); }
