#include <iostream>

#include "kboxkit/cli.hpp"

int main(int argc, char** argv) { return kboxkit::cli::run(argc, argv, std::cout, std::cerr); }
