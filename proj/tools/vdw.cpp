#include <iostream>
#include <string>
#include <vector>

#include "vdw/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return vdw::cli::run(args, std::cout, std::cerr);
}
