#include <iostream>
#include <string>
#include <vector>

#include "lightcone/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lightcone::run_cli(args, std::cout, std::cerr);
}
