#include <iostream>
#include <string>
#include <vector>

#include "sgv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sgv::run_cli(args, std::cout, std::cerr);
}
