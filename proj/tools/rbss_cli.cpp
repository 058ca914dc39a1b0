#include <iostream>

#include "rbss/cli.hpp"

int main(int argc, char** argv) { return rbss::cli::cli_main(argc, argv, std::cout, std::cerr); }
