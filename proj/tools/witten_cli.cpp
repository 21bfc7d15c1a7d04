#include "witten/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return witten::cli::main_entry(argc, argv, std::cout, std::cerr); }
