#include <iostream>
#include <string>
#include <vector>

#include "ising_pbw/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ising_pbw::run_cli(args, std::cout, std::cerr);
}
