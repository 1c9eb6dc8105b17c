#include <iostream>

#include "prmi/cli.hpp"

int main(int argc, char** argv) { return prmi::cli::main_entry(argc, argv, std::cout, std::cerr); }
