#include <iostream>
#include <string>
#include <vector>

#include "netlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return netlab::cli::run(args, std::cout, std::cerr);
}
