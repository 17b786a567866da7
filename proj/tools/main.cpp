#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return remote_vm::cli::run(argc, argv, std::cout, std::cerr); }
