#include <iostream>

#include <diracgb/cli.hpp>

int main(int argc, char** argv) { return diracgb::run_cli(argc, argv, std::cout, std::cerr); }
