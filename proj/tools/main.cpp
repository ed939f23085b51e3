#include <iostream>

#include "bairelab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bairelab::cli::run(args, std::cout, std::cerr);
}
