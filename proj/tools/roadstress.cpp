#include <iostream>

#include "roadstress/io/cli.hpp"

int main(int argc, char** argv) { return roadstress::io::cli_main(argc, argv, std::cout, std::cerr); }
