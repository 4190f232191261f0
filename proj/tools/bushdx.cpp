#include <iostream>
#include <string>
#include <vector>

#include "bushdx/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return bushdx::cli::run(args, std::cout, std::cerr);
}
