#include <iostream>

#include "dischull/cli.hpp"

int main(int argc, char** argv) { return dischull::cli::run(argc, argv, std::cout, std::cerr); }
