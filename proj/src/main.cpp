#include <iostream>
#include <vector>

#include "hqec/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return hqec::run_cli(args, std::cout, std::cerr);
}
