#include <iostream>

#include "nearforest/cli.hpp"

int main(int argc, char** argv) { return nearforest::cli_dispatch(argc, argv, std::cout, std::cerr); }
