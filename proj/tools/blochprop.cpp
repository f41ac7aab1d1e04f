#include <iostream>

#include "blochprop/cli.hpp"

int main(int argc, char** argv) { return blochprop::cli::run(argc, argv, std::cout, std::cerr); }
