#include <iostream>

#include "jetmetric/cli/run.hpp"

int main(int argc, char** argv) { return jetmetric::cli::run(argc, argv, std::cout, std::cerr); }
