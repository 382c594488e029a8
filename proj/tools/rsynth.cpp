#include <iostream>

#include "rsynth/cli.hpp"

int main(int argc, char** argv) { return rsynth::run_cli(argc, argv, std::cout, std::cerr); }
