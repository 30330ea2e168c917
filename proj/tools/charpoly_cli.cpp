#include <iostream>

#include "charpoly/cli.hpp"

int main(int argc, char** argv) { return charpoly::parse_and_dispatch(argc, argv, std::cout, std::cerr); }
