#include <iostream>

#include "atri/cli/commands.hpp"

int main(int argc, char** argv) { return atri::cli::run(argc, argv, std::cout, std::cerr); }
