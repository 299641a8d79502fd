#include <iostream>
#include <string>
#include <vector>

#include "isingloop/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return isingloop::cli::run(args, std::cout, std::cerr);
}
