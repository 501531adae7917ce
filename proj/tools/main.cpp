#include <iostream>

#include "bezout/cli.hpp"

int main(int argc, char** argv) { return bezout::cli::run(argc, argv, std::cout, std::cerr); }
