#include <iostream>

#include "satr/cli.hpp"

int main(int argc, char** argv) { return satr::run_cli(argc, argv, std::cout, std::cerr); }
