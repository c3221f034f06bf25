#include <iostream>

#include "secroute/cli.hpp"

int main(int argc, char** argv) { return secroute::run_cli(argc, argv, std::cout, std::cerr); }
