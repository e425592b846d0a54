#include <iostream>
#include <string>
#include <vector>

#include "kantian/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kantian::cli::run(args, std::cout, std::cerr);
}
