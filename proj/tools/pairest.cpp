#include <iostream>
#include <string>
#include <vector>

#include "pairest/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pairest::run_cli(args, std::cout, std::cerr);
}
