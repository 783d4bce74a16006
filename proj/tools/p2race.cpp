#include <iostream>
#include <string>
#include <vector>

#include "p2race/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return p2race::run_cli(args, std::cout, std::cerr);
}
