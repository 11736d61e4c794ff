#include <iostream>

#include "ellcover/cli.hpp"

int main(int argc, char** argv) { return ellcover::run_cli(argc, argv, std::cout, std::cerr); }
