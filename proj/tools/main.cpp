#include <iostream>

#include "phqm/cli.hpp"

int main(int argc, char** argv) { return phqm::cli::main_entry(argc, argv, std::cout, std::cerr); }
