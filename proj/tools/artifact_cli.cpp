#include <iostream>

#include "artifact/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return artifact::cli::run(args, std::cout, std::cerr);
}
