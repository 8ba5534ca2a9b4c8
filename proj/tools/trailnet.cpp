#include <iostream>

#include "trailnet/cli.hpp"

int main(int argc, char** argv) { return trailnet::cli::main(argc, argv, std::cout, std::cerr); }
