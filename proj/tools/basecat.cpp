#include <iostream>
#include <string>
#include <vector>

#include "basecat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return basecat::run_cli(args, std::cout, std::cerr);
}
