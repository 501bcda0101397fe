#include <iostream>

#include "suppvar/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return suppvar::runCli(args, std::cout, std::cerr);
}
