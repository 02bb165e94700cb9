#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return expclose::cli::run(argc, argv, std::cout, std::cerr); }
