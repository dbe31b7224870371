#include <iostream>
#include <string>
#include <vector>

#include "pickfam/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pickfam::cli::run(args, std::cout, std::cerr);
}
