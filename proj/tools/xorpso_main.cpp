#include <iostream>

#include "xorpso/cli.hpp"

int main(int argc, char** argv) {
  return xorpso::cli::run_cli(argc, argv, std::cout, std::cerr);
}
