#include "gbv/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return gbv::cli::run(argc, argv, std::cout, std::cerr); }
