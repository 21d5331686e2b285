#include <iostream>

#include "conngraph/cli.hpp"

int main(int argc, char** argv) { return conngraph::cli::run(argc, argv, std::cout, std::cerr); }
