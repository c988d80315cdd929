#include <iostream>
#include <string>
#include <vector>

#include "realform/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return realform::run_cli(args, std::cout, std::cerr);
}
