#include <iostream>

#include "lvt/cli.hpp"

int main(int argc, char** argv) { return lvt::run_cli(argc, argv, std::cout, std::cerr); }
