#include <iostream>

#include "dmc/cli.hpp"

int main(int argc, char** argv) { return dmc::cli::main_entry(argc, argv, std::cout, std::cerr); }
