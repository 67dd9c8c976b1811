#include <iostream>

#include "fghlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return fghlab::cli::run(args, std::cout, std::cerr);
}
